#include "reflekt/binary.hpp"

#include <algorithm>
#include <stdexcept>

#include "reflekt/arith.hpp"
#include "reflekt/lattice.hpp"

namespace reflekt::binary {

namespace {

// Trial-division bound for the local pre-filter. Partial factorizations are
// fine since the filter is only a necessary condition.
constexpr std::uint64_t kLocalPrimeLimit = 1'000'000;

void require_indefinite(const BinaryForm& f) {
  if (f.disc() <= 0)
    throw DomainError("form " + f.str() + " is degenerate or definite (discriminant " +
                      to_string(f.disc()) + ")");
}

void require_non_square(const Integer& d, const char* what) {
  if (d < 1) throw DomainError(std::string(what) + ": d must be positive");
  if (is_square(d)) throw DomainError(std::string(what) + ": d = " + to_string(d) + " is a perfect square");
}

}  // namespace

BinaryForm BinaryForm::from_gram(const IntMatrix& g) {
  if (g.rows() != 2 || g.cols() != 2 || !g.symmetric()) throw DomainError("expected a symmetric 2x2 Gram matrix");
  return {g(0, 0), 2 * g(0, 1), g(1, 1)};
}

IntMatrix BinaryForm::gram() const {
  if (mpz_odd_p(b.get_mpz_t())) throw DomainError("form " + str() + " has odd middle coefficient; no integral Gram matrix");
  IntMatrix g(2, 2);
  g(0, 0) = a;
  g(0, 1) = g(1, 0) = b / 2;
  g(1, 1) = c;
  return g;
}

std::string BinaryForm::str() const { return "(" + to_string(a) + "," + to_string(b) + "," + to_string(c) + ")"; }

Mat2 Mat2::inverse_unimodular() const {
  const Integer d = det();
  if (d == 1) return {s, -q, -r, p};
  if (d == -1) return {-s, q, r, -p};
  throw DomainError("matrix is not unimodular");
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.p * y.p + x.q * y.r, x.p * y.q + x.q * y.s, x.r * y.p + x.s * y.r, x.r * y.q + x.s * y.s};
}

std::pair<Integer, Integer> apply(const Mat2& m, const Integer& x, const Integer& y) {
  return {m.p * x + m.q * y, m.r * x + m.s * y};
}

BinaryForm transform(const BinaryForm& f, const Mat2& m) {
  return {f(m.p, m.r), 2 * f.a * m.p * m.q + f.b * (m.p * m.s + m.q * m.r) + 2 * f.c * m.r * m.s, f(m.q, m.s)};
}

CFExpansion cf_sqrt(const Integer& d) {
  require_non_square(d, "cf_sqrt");
  CFExpansion out;
  out.d = d;
  out.a0 = isqrt(d);
  Integer m = 0, q = 1, a = out.a0;
  do {
    m = a * q - m;
    q = (d - m * m) / q;
    a = (out.a0 + m) / q;
    out.period.push_back(a);
    out.q_sequence.push_back(q);
  } while (a != 2 * out.a0);
  return out;
}

PellSolution pell_fundamental(const Integer& d) {
  const CFExpansion cf = cf_sqrt(d);
  Integer h_prev = 1, h = cf.a0;
  Integer k_prev = 0, k = 1;
  // The fundamental solution is the first convergent with norm 1; it occurs
  // within two periods.
  for (std::size_t i = 0; i < 2 * cf.period.size(); ++i) {
    if (h * h - d * k * k == 1) return {h, k, d};
    const Integer& a = cf.period[i % cf.period.size()];
    Integer h_next = a * h + h_prev;
    Integer k_next = a * k + k_prev;
    h_prev = std::move(h);
    h = std::move(h_next);
    k_prev = std::move(k);
    k = std::move(k_next);
  }
  if (h * h - d * k * k == 1) return {h, k, d};
  throw std::logic_error("pell_fundamental: no unit within two periods of sqrt(" + to_string(d) + ")");
}

IntMatrix infinite_order_isometry(const Integer& d) {
  const PellSolution s = pell_fundamental(d);
  IntMatrix m(2, 2);
  m(0, 0) = s.x;
  m(0, 1) = d * s.y;
  m(1, 0) = s.y;
  m(1, 1) = s.x;
  return m;
}

Mat2 pell_automorph(const BinaryForm& f) {
  require_indefinite(f);
  const Integer disc = f.disc();
  if (is_square(disc)) throw DomainError("pell_automorph: form " + f.str() + " is isotropic");
  if (divides(4, disc)) {
    // x^2 - (disc/4) u^2 = 1 gives t = 2x in t^2 - disc u^2 = 4.
    const PellSolution s = pell_fundamental(disc / 4);
    const Integer h = f.b / 2;
    return {s.x - h * s.y, -f.c * s.y, f.a * s.y, s.x + h * s.y};
  }
  const PellSolution s = pell_fundamental(disc);
  return {s.x - f.b * s.y, -2 * f.c * s.y, 2 * f.a * s.y, s.x + f.b * s.y};
}

bool is_reduced(const BinaryForm& f) {
  const Integer disc = f.disc();
  const Integer s = isqrt(disc);
  const Integer two_a = 2 * abs_of(f.a);
  // |sqrt(D) - 2|a|| < b < sqrt(D), with sqrt(D) irrational.
  return f.b <= s && f.b + two_a > s && two_a - f.b <= s;
}

std::pair<BinaryForm, Mat2> rho(const BinaryForm& f) {
  const Integer disc = f.disc();
  const Integer s = isqrt(disc);
  const Integer& c = f.c;
  if (c == 0) throw DomainError("rho: form " + f.str() + " has c = 0");
  const Integer abs_c = abs_of(c);
  const Integer two_c = 2 * abs_c;
  // r = -b (mod 2|c|), in (-|c|, |c|] when |c| > sqrt(D), else in (sqrt(D) - 2|c|, sqrt(D)).
  const Integer lo = abs_c > s ? Integer(-abs_c + 1) : Integer(s - two_c + 1);
  const Integer r = lo + mod_pos(-f.b - lo, two_c);
  const Integer t = (r + f.b) / (2 * c);
  BinaryForm g{c, r, (r * r - disc) / (4 * c)};
  return {g, Mat2{0, -1, 1, t}};
}

std::pair<BinaryForm, Mat2> reduce(const BinaryForm& f) {
  if (is_square(f.disc())) throw DomainError("reduce: discriminant of " + f.str() + " is a square");
  require_indefinite(f);
  BinaryForm g = f;
  Mat2 m;
  while (!is_reduced(g)) {
    auto [next, step] = rho(g);
    g = std::move(next);
    m = m * step;
  }
  return {g, m};
}

FormClass::FormClass(BinaryForm f) : form_(std::move(f)) {
  require_indefinite(form_);
  disc_ = form_.disc();
  if (is_square(disc_)) throw DomainError("FormClass: form " + form_.str() + " is isotropic");
  std::tie(reduced_, to_reduced_) = reduce(form_);
  BinaryForm g = reduced_;
  do {
    index_.emplace(g, cycle_.size());
    leading_.insert(g.a);
    cycle_.push_back(g);
    g = rho(g).first;
  } while (g != reduced_);
  disc_primes_ = arith::small_odd_prime_factors(disc_, kLocalPrimeLimit);
}

std::optional<std::size_t> FormClass::position(const BinaryForm& reduced) const {
  auto it = index_.find(reduced);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool FormClass::equivalent(const BinaryForm& g) const {
  if (g.disc() != disc_) return false;
  return position(reduce(g).first).has_value();
}

Mat2 FormClass::walk_to(std::size_t i) const {
  Mat2 m = to_reduced_;
  BinaryForm g = reduced_;
  for (std::size_t k = 0; k < i; ++k) {
    auto [next, step] = rho(g);
    g = std::move(next);
    m = m * step;
  }
  return m;
}

std::optional<Mat2> FormClass::transform_to(const BinaryForm& g) const {
  if (g.disc() != disc_) return std::nullopt;
  auto [gr, mg] = reduce(g);
  const auto pos = position(gr);
  if (!pos) return std::nullopt;
  // f o A = gr and g o mg = gr, so f o (A mg^{-1}) = g.
  return walk_to(*pos) * mg.inverse_unimodular();
}

Mat2 FormClass::cycle_automorph() const {
  Mat2 p;
  BinaryForm g = reduced_;
  for (std::size_t k = 0; k < cycle_.size(); ++k) {
    auto [next, step] = rho(g);
    g = std::move(next);
    p = p * step;
  }
  // reduced = f o R and reduced o P = reduced, hence f o (R P R^{-1}) = f.
  return to_reduced_ * p * to_reduced_.inverse_unimodular();
}

bool FormClass::locally_represents(const Integer& n) const {
  for (const auto& p : disc_primes_) {
    // Modulo p the form is lambda * (linear form)^2.
    Integer lambda = 0;
    if (!divides(p, form_.a))
      lambda = form_.a;
    else if (!divides(p, form_.c))
      lambda = form_.c;
    if (lambda == 0) {
      if (!divides(p, n)) return false;
      continue;
    }
    if (divides(p, n)) continue;
    if (arith::jacobi(lambda * n, p) != 1) return false;
  }
  return true;
}

bool FormClass::represents_primitively(const Integer& m) const {
  if (m == 0) return false;
  const Integer abs_m = abs_of(m);
  // Below sqrt(D)/2 a primitively represented value is a leading coefficient
  // of some reduced form in the cycle.
  if (4 * m * m < disc_) return leading_.contains(m);
  const Integer four_m = 4 * abs_m;
  const Integer two_m = 2 * abs_m;
  for (Integer b = 0; b < two_m; ++b) {
    const Integer num = b * b - disc_;
    if (!divides(four_m, num)) continue;
    if (equivalent(BinaryForm{m, b, num / (4 * m)})) return true;
  }
  return false;
}

bool FormClass::represents(const Integer& n) const {
  if (n == 0) return false;  // anisotropic
  if (!locally_represents(n)) return false;
  for (const auto& t : arith::divisors(n)) {
    const Integer t2 = t * t;
    if (t2 > abs_of(n)) break;
    if (!divides(t2, n)) continue;
    if (represents_primitively(n / t2)) return true;
  }
  return false;
}

Integer FormClass::mu() const {
  std::optional<Integer> best;
  for (const auto& a : leading_)
    if (a < 0 && (!best || a > *best)) best = a;
  if (!best) throw std::logic_error("reduced cycle has no negative leading coefficient");
  // Every negative value above sqrt(D)/2 in size that is represented at all is
  // primitively represented by a cycle form; only the band between needs the class test.
  if (4 * *best * *best < disc_) return *best;
  for (Integer k = std::max(Integer(1), Integer(isqrt(disc_) / 2)); k < -*best; ++k) {
    if (4 * k * k < disc_) continue;
    if (represents(-k)) return -k;
  }
  return *best;
}

std::vector<std::pair<Integer, Integer>> split_form_solutions(const BinaryForm& f, const Integer& n) {
  const Integer disc = f.disc();
  if (!is_square(disc) || disc == 0) throw DomainError("split_form_solutions: discriminant must be a positive square");
  if (n == 0) throw DomainError("split_form_solutions: n must be nonzero");
  const Integer s = isqrt(disc);
  std::vector<std::pair<Integer, Integer>> out;
  auto keep = [&](const Integer& x, const Integer& y) {
    if (f(x, y) == n) out.emplace_back(x, y);
  };
  if (f.a != 0) {
    // 4a f = (2ax + (b+s) y)(2ax + (b-s) y)
    const Integer big = 4 * f.a * n;
    for (const auto& d : arith::divisors(big))
      for (const Integer& u : {Integer(d), Integer(-d)}) {
        const Integer w = big / u;
        if (!divides(2 * s, u - w)) continue;
        const Integer y = (u - w) / (2 * s);
        const Integer num = u - (f.b + s) * y;
        if (!divides(2 * f.a, num)) continue;
        keep(num / (2 * f.a), y);
      }
  } else {
    // f = y (b x + c y), b != 0
    for (const auto& d : arith::divisors(n))
      for (const Integer& y : {Integer(d), Integer(-d)}) {
        const Integer num = n / y - f.c * y;
        if (!divides(f.b, num)) continue;
        keep(num / f.b, y);
      }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool represents(const BinaryForm& f, const Integer& n) {
  require_indefinite(f);
  const Integer disc = f.disc();
  if (n == 0) return is_square(disc);
  if (is_square(disc)) return !split_form_solutions(f, n).empty();
  return FormClass(f).represents(n);
}

Integer mu(const BinaryForm& f) {
  require_indefinite(f);
  if (is_square(f.disc())) throw DomainError("mu: form " + f.str() + " is isotropic; mu is defined for anisotropic forms only");
  return FormClass(f).mu();
}

bool is_anisotropic(const BinaryForm& f) {
  require_indefinite(f);
  return !is_square(f.disc());
}

bool canonical_less(const Vector& u, const Vector& v) {
  auto key = [](const Vector& w) {
    Integer mx = 0, sum = 0;
    long neg = 0;
    for (const auto& x : w) {
      const Integer ax = abs_of(x);
      if (ax > mx) mx = ax;
      sum += ax;
      if (x < 0) ++neg;
    }
    return std::make_tuple(mx, sum, neg);
  };
  const auto ku = key(u), kv = key(v);
  if (ku != kv) return ku < kv;
  return u < v;
}

namespace {

bool satisfies_root_condition(const IntMatrix& gram, const Integer& norm, const Vector& v) {
  for (const auto& p : gram * v)
    if (!divides(norm, 2 * p)) return false;
  return true;
}

Integer max_abs(const Vector& v) {
  Integer m = 0;
  for (const auto& x : v) m = std::max(m, abs_of(x));
  return m;
}

// Smallest orbit member under the cyclic group generated by `gen`. Each squared
// coordinate is convex along the orbit, so the sup-norm is unimodal.
Vector orbit_minimum(const Vector& start, const Mat2& gen) {
  Vector best = sign_normalized(start);
  for (const Mat2& step : {gen, gen.inverse_unimodular()}) {
    Vector cur = start;
    for (;;) {
      const auto [x, y] = apply(step, cur[0], cur[1]);
      Vector next{x, y};
      if (max_abs(next) > max_abs(cur)) break;
      cur = std::move(next);
      Vector cand = sign_normalized(cur);
      if (canonical_less(cand, best)) best = cand;
    }
  }
  return best;
}

}  // namespace

std::vector<BinaryRoot> binary_roots(const BinaryForm& f) {
  require_indefinite(f);
  const IntMatrix gram = f.gram();
  const Lattice lattice(gram);
  const Integer exponent = discriminant(lattice).exponent;
  const bool split = is_square(f.disc());
  std::optional<FormClass> cls;
  Mat2 gen;
  if (!split) {
    cls.emplace(f);
    gen = cls->cycle_automorph();
  }

  std::vector<BinaryRoot> out;
  for (const auto& d : arith::divisors(2 * exponent)) {
    const Integer c = -d;
    std::optional<Vector> best;
    auto consider = [&](Vector v) {
      if (!is_primitive(v) || lattice.norm(v) != c || !satisfies_root_condition(gram, c, v)) return;
      Vector cand = split ? sign_normalized(std::move(v)) : orbit_minimum(v, gen);
      if (!best || canonical_less(cand, *best)) best = std::move(cand);
    };
    if (split) {
      for (const auto& [x, y] : split_form_solutions(f, c)) consider({x, y});
    } else if (cls->locally_represents(c)) {
      // One representative per proper class of primitive representations.
      const Integer two_d = 2 * d;
      for (Integer b = 0; b < two_d; ++b) {
        const Integer num = b * b - cls->disc();
        if (!divides(4 * d, num)) continue;
        const auto m = cls->transform_to(BinaryForm{c, b, num / (4 * c)});
        if (m) consider({m->p, m->r});
      }
    }
    if (best) out.push_back({c, std::move(*best)});
  }
  return out;
}

}  // namespace reflekt::binary
