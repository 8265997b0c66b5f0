#include "reflekt/cli.hpp"

#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "reflekt/arith.hpp"
#include "reflekt/binary.hpp"
#include "reflekt/construct.hpp"
#include "reflekt/json_io.hpp"
#include "reflekt/lattice.hpp"
#include "reflekt/roots.hpp"

namespace reflekt::cli {

namespace {

using io::json;
using io::to_json;

struct Output {
  json data;             // payload without the "format" key
  std::string text;      // text-mode rendering
  bool certificate = false;
  int exit_code = kExitOk;
};

std::string join(const Vector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s;
}

std::string render_matrix(const IntMatrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) s += "  " + join(m.row(i)) + "\n";
  return s;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

json vectors_json(const std::vector<Vector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

std::string vectors_text(const std::vector<Vector>& vs) {
  std::string s;
  for (const auto& v : vs) s += join(v) + "\n";
  return s;
}

// Form selection shared by the binary subcommands: -D <int> or -f a,b,c.
struct FormArgs {
  std::string d;
  std::string f;

  void attach(CLI::App* app) {
    auto* od = app->add_option("-D", d, "Diagonal form (1,0,-D)");
    auto* of = app->add_option("-f,--form", f, "Form coefficients a,b,c");
    od->excludes(of);
  }
  binary::BinaryForm form() const {
    if (!d.empty()) return binary::BinaryForm::diagonal(parse_integer(d));
    if (f.empty()) throw CLI::RequiredError("-D or -f");
    const Vector c = io::parse_vector(f);
    if (c.size() != 3) throw DomainError("form needs three coefficients a,b,c");
    return {c[0], c[1], c[2]};
  }
};

Sublattice sublattice_from(const Lattice& l, const std::vector<std::string>& specs) {
  std::vector<Vector> rows;
  for (const auto& s : specs)
    for (auto& v : io::parse_vectors(s)) rows.push_back(std::move(v));
  for (const auto& r : rows)
    if (r.size() != l.rank()) throw DomainError("vector length " + std::to_string(r.size()) + " does not match rank " + std::to_string(l.rank()));
  return Sublattice(l, IntMatrix::from_rows(rows));
}

std::size_t to_size(const std::string& s, const char* what) {
  const Integer x = parse_integer(s);
  if (x < 1 || !x.fits_ulong_p()) throw DomainError(std::string(what) + " must be a positive integer");
  return x.get_ui();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"reflekt: exact toolkit for integral quadratic lattices"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  bool json_flag = false;
  app.add_flag("--json", json_flag, "Shorthand for --format json");
  std::string effort = std::to_string(arith::kDefaultEffortLimit);
  app.add_option("--effort", effort, "Prime-search effort limit (candidates)");

  std::function<Output()> action;
  auto effort_limit = [&] { return static_cast<std::uint64_t>(to_size(effort, "--effort")); };

  // ---------------------------------------------------------------- arith
  auto* arith_cmd = app.add_subcommand("arith", "Number-theory kernel");
  arith_cmd->require_subcommand(1);
  std::string ja, jn;
  auto* jac = arith_cmd->add_subcommand("jacobi", "Jacobi symbol (a/n)");
  jac->add_option("-a", ja)->required();
  jac->add_option("-n", jn)->required();
  jac->callback([&] {
    action = [&] {
      const int v = arith::jacobi(parse_integer(ja), parse_integer(jn));
      return Output{{{"jacobi", v}}, std::to_string(v) + "\n"};
    };
  });
  std::string pn;
  auto* isp = arith_cmd->add_subcommand("is-prime", "Deterministic primality below 2^64");
  isp->add_option("-n", pn)->required();
  isp->callback([&] {
    action = [&] {
      const bool v = arith::is_prime(parse_integer(pn));
      return Output{{{"prime", v}}, yes_no(v) + "\n"};
    };
  });
  std::string nk, nmin = "2";
  std::vector<std::string> nexcl;
  auto* nrp = arith_cmd->add_subcommand("nonresidue-prime", "Smallest p = 7 mod 8 with -k a nonresidue");
  nrp->add_option("-k", nk)->required();
  nrp->add_option("--exclude", nexcl, "Primes to skip (comma-separated)")->delimiter(',');
  nrp->add_option("--min", nmin);
  nrp->callback([&] {
    action = [&] {
      std::set<Integer> ex;
      for (const auto& s : nexcl) ex.insert(parse_integer(s));
      const Integer p = arith::nonresidue_prime(parse_integer(nk), ex, parse_integer(nmin), effort_limit());
      return Output{{{"p", to_json(p)}}, to_string(p) + "\n"};
    };
  });
  std::vector<std::string> fcong;
  std::vector<std::string> fexcl;
  std::string fmin = "2";
  auto* fp = arith_cmd->add_subcommand("find-prime", "Smallest prime in an arithmetic progression");
  fp->add_option("--congruence", fcong, "residue:modulus (repeatable)")->required();
  fp->add_option("--exclude", fexcl)->delimiter(',');
  fp->add_option("--min", fmin);
  fp->callback([&] {
    action = [&] {
      arith::PrimeSearchSpec spec;
      for (const auto& c : fcong) {
        const auto pos = c.find(':');
        if (pos == std::string::npos) throw DomainError("congruence must be residue:modulus");
        spec.congruences.emplace_back(parse_integer(c.substr(0, pos)), parse_integer(c.substr(pos + 1)));
      }
      for (const auto& s : fexcl) spec.exclude.insert(parse_integer(s));
      spec.minimum = parse_integer(fmin);
      const Integer p = arith::find_prime(spec, effort_limit());
      return Output{{{"p", to_json(p)}}, to_string(p) + "\n"};
    };
  });

  // -------------------------------------------------------------- lattice
  auto* lat = app.add_subcommand("lattice", "Lattice invariants and sublattice algebra");
  lat->require_subcommand(1);
  std::string lfile;
  std::vector<std::string> lsub, lsuper;
  std::string ln, lbox = "10";

  auto* info = lat->add_subcommand("info", "Signature, determinant, discriminant group");
  info->add_option("file", lfile, "Lattice JSON file")->required();
  info->callback([&] {
    action = [&] {
      const Lattice l = io::load_lattice(lfile);
      const Signature s = signature(l);
      const DiscriminantData dd = discriminant(l);
      const bool unscaled = is_unscaled(l);
      json j = {{"signature", {s.positive, s.negative}},
                {"det", to_json(l.det())},
                {"disc_factors", to_json(dd.invariant_factors)},
                {"exponent", to_json(dd.exponent)},
                {"unscaled", unscaled}};
      std::ostringstream t;
      t << "signature (" << s.positive << "," << s.negative << ")\n"
        << "det " << l.det() << "\n"
        << "disc_factors [" << join(dd.invariant_factors) << "]\n"
        << "exponent " << dd.exponent << "\n"
        << "unscaled " << yes_no(unscaled) << "\n";
      return Output{j, t.str()};
    };
  });

  auto* comp = lat->add_subcommand("complement", "Orthogonal complement of a sublattice");
  comp->add_option("file", lfile)->required();
  comp->add_option("--sub", lsub, "Generators (a,b,...;c,d,...), repeatable")->required();
  comp->callback([&] {
    action = [&] {
      const Lattice l = io::load_lattice(lfile);
      const Sublattice c = orthogonal_complement(sublattice_from(l, lsub));
      const IntMatrix g = gram_of(c);
      return Output{{{"basis", to_json(c.basis)}, {"gram", to_json(g)}},
                    "basis\n" + render_matrix(c.basis) + "gram\n" + render_matrix(g)};
    };
  });

  auto* sat = lat->add_subcommand("saturate", "Primitive closure of a sublattice");
  sat->add_option("file", lfile)->required();
  sat->add_option("--sub", lsub)->required();
  sat->callback([&] {
    action = [&] {
      const Lattice l = io::load_lattice(lfile);
      const Sublattice s = sublattice_from(l, lsub);
      const Sublattice c = saturate(s);
      const Integer idx = index(s, c);
      return Output{{{"basis", to_json(c.basis)}, {"index", to_json(idx)}},
                    "basis\n" + render_matrix(c.basis) + "index " + to_string(idx) + "\n"};
    };
  });

  auto* idx = lat->add_subcommand("index", "Index [super : sub] of nested sublattices");
  idx->add_option("file", lfile)->required();
  idx->add_option("--sub", lsub)->required();
  idx->add_option("--super", lsuper)->required();
  idx->callback([&] {
    action = [&] {
      const Lattice l = io::load_lattice(lfile);
      const Integer i = index(sublattice_from(l, lsub), sublattice_from(l, lsuper));
      return Output{{{"index", to_json(i)}}, to_string(i) + "\n"};
    };
  });

  auto* nv = lat->add_subcommand("norm-vectors", "Primitive vectors of norm n in a coordinate box");
  nv->add_option("file", lfile)->required();
  nv->add_option("-n", ln)->required();
  nv->add_option("--box", lbox);
  nv->callback([&] {
    action = [&] {
      const auto vs = enumerate_norm_vectors(io::load_lattice(lfile), parse_integer(ln), to_size(lbox, "--box"));
      return Output{{{"vectors", vectors_json(vs)}}, vectors_text(vs)};
    };
  });

  // --------------------------------------------------------------- binary
  auto* bin = app.add_subcommand("binary", "Indefinite binary quadratic forms");
  bin->require_subcommand(1);
  FormArgs fa;
  std::string bn, bd;

  auto* rep = bin->add_subcommand("represents", "Complete representation decision");
  fa.attach(rep);
  rep->add_option("-n", bn)->required();
  rep->callback([&] {
    action = [&] {
      const auto f = fa.form();
      const bool r = binary::represents(f, parse_integer(bn));
      return Output{{{"form", to_json(Vector{f.a, f.b, f.c})}, {"n", to_json(parse_integer(bn))}, {"represents", r}},
                    yes_no(r) + "\n"};
    };
  });

  auto* mu = bin->add_subcommand("mu", "Largest negative represented integer");
  fa.attach(mu);
  mu->callback([&] {
    action = [&] {
      const Integer m = binary::mu(fa.form());
      return Output{{{"mu", to_json(m)}}, to_string(m) + "\n"};
    };
  });

  auto* aniso = bin->add_subcommand("anisotropic", "Does the form avoid zero?");
  fa.attach(aniso);
  aniso->callback([&] {
    action = [&] {
      const bool a = binary::is_anisotropic(fa.form());
      return Output{{{"anisotropic", a}}, yes_no(a) + "\n"};
    };
  });

  auto* cf = bin->add_subcommand("cf", "Continued fraction of sqrt(D)");
  cf->add_option("-D", bd)->required();
  cf->callback([&] {
    action = [&] {
      const auto e = binary::cf_sqrt(parse_integer(bd));
      return Output{{{"d", to_json(e.d)}, {"a0", to_json(e.a0)}, {"period", to_json(e.period)},
                     {"q_sequence", to_json(e.q_sequence)}},
                    "[" + to_string(e.a0) + "; " + join(e.period) + "]\n"};
    };
  });

  auto* pell = bin->add_subcommand("pell", "Fundamental solution of x^2 - D y^2 = 1");
  pell->add_option("-D", bd)->required();
  pell->callback([&] {
    action = [&] {
      const auto s = binary::pell_fundamental(parse_integer(bd));
      return Output{{{"d", to_json(s.d)}, {"x", to_json(s.x)}, {"y", to_json(s.y)}},
                    to_string(s.x) + " " + to_string(s.y) + "\n"};
    };
  });

  auto* broots = bin->add_subcommand("roots", "One root per achievable negative root norm");
  fa.attach(broots);
  broots->callback([&] {
    action = [&] {
      const auto rs = binary::binary_roots(fa.form());
      json a = json::array();
      std::string t;
      for (const auto& r : rs) {
        a.push_back({{"norm", to_json(r.norm)}, {"vector", to_json(r.vector)}});
        t += to_string(r.norm) + " " + join(r.vector) + "\n";
      }
      return Output{{{"roots", a}}, t};
    };
  });

  auto* iso = bin->add_subcommand("isometry", "Infinite-order isometry of diag(1,-D)");
  iso->add_option("-D", bd)->required();
  iso->callback([&] {
    action = [&] {
      const IntMatrix m = binary::infinite_order_isometry(parse_integer(bd));
      return Output{{{"matrix", to_json(m)}, {"trace", to_json(Integer(m(0, 0) + m(1, 1)))}}, render_matrix(m)};
    };
  });

  // ---------------------------------------------------------------- roots
  auto* rts = app.add_subcommand("roots", "Roots, reflections and reflectivity");
  rts->require_subcommand(1);
  std::string rv, ru, rbox = "10", rbudget = "10";

  auto* chk = rts->add_subcommand("check", "Is v a root?");
  chk->add_option("file", lfile)->required();
  chk->add_option("-v", rv)->required();
  chk->callback([&] {
    action = [&] {
      const Lattice l = io::load_lattice(lfile);
      const Vector v = io::parse_vector(rv);
      const bool r = roots::is_root(l, v);
      return Output{{{"root", r}, {"norm", to_json(l.norm(v))}}, yes_no(r) + "\n"};
    };
  });

  auto* refl = rts->add_subcommand("reflect", "Image of u under the reflection in root v");
  refl->add_option("file", lfile)->required();
  refl->add_option("-v", rv)->required();
  refl->add_option("-u", ru)->required();
  refl->callback([&] {
    action = [&] {
      const Vector img = roots::reflect(io::load_lattice(lfile), io::parse_vector(rv), io::parse_vector(ru));
      return Output{{{"image", to_json(img)}}, join(img) + "\n"};
    };
  });

  auto* cand = rts->add_subcommand("candidates", "Negative divisors of 2 e(L)");
  cand->add_option("file", lfile)->required();
  cand->callback([&] {
    action = [&] {
      const Vector c = roots::root_norm_candidates(io::load_lattice(lfile));
      return Output{{{"candidates", to_json(c)}}, join(c) + "\n"};
    };
  });

  auto* find = rts->add_subcommand("find", "Roots in a coordinate box");
  find->add_option("file", lfile)->required();
  find->add_option("--box", rbox);
  find->callback([&] {
    action = [&] {
      const auto vs = roots::find_roots_in_box(io::load_lattice(lfile), to_size(rbox, "--box"));
      return Output{{{"roots", vectors_json(vs)}}, vectors_text(vs)};
    };
  });

  auto* rfl = rts->add_subcommand("reflectivity", "Reflective / non-reflective / unknown");
  rfl->add_option("file", lfile)->required();
  rfl->add_option("--budget", rbudget, "Coordinate box for rank >= 3");
  rfl->callback([&] {
    action = [&] {
      const auto v = roots::reflectivity_indicator(io::load_lattice(lfile), to_size(rbudget, "--budget"));
      json j = {{"status", roots::to_string(v.status)},
                {"reason", v.reason},
                {"roots", vectors_json(v.roots)},
                {"candidates", to_json(v.exhausted_candidates)},
                {"search_box", v.search_box}};
      j["pell_unit"] = v.pell_unit ? to_json(*v.pell_unit) : json(nullptr);
      std::string t = roots::to_string(v.status) + "\n" + v.reason + "\n";
      if (v.pell_unit) t += "pell unit\n" + render_matrix(*v.pell_unit);
      if (!v.roots.empty()) t += "roots\n" + vectors_text(v.roots);
      return Output{j, t};
    };
  });

  // ------------------------------------------------------------ construct
  auto* con = app.add_subcommand("construct", "Certified constructions");
  con->require_subcommand(1);
  std::string cn, cb, ca, ch, cN, ccount = "1", cstrategy = "pell", cd, cbox = "10";

  auto* ar = con->add_subcommand("avoid-roots", "x^2 - ab y^2 avoiding 0, -1, ..., -n");
  ar->add_option("-n", cn)->required();
  ar->add_option("-b", cb)->required();
  ar->callback([&] {
    action = [&] {
      return Output{io::certificate_to_json(construct::avoid_roots(parse_integer(cn), parse_integer(cb), effort_limit())),
                    {}, true};
    };
  });

  auto* pf = con->add_subcommand("pell-family", "x^2 - (a^2-1) y^2 with mu = 2 - 2a");
  pf->add_option("-a", ca)->required();
  pf->callback([&] {
    action = [&] { return Output{io::certificate_to_json(construct::pell_family(parse_integer(ca))), {}, true}; };
  });

  auto* spa = con->add_subcommand("select-pell-a", "Smallest a with 2 - 2a < -n");
  spa->add_option("-n", cn)->required();
  spa->callback([&] {
    action = [&] {
      const Integer a = construct::select_pell_a(parse_integer(cn));
      return Output{{{"a", to_json(a)}}, to_string(a) + "\n"};
    };
  });

  auto* mj = con->add_subcommand("mj", "Primitive binary sublattices through h with mu < -dN");
  mj->set_help_flag("--help", "Print this help message and exit");
  mj->add_option("--lattice", lfile, "Ambient lattice JSON file")->required();
  mj->add_option("--h", ch, "Polarization vector, comma separated")->required();
  mj->add_option("--N", cN, "MBM square bound")->required();
  mj->add_option("--count", ccount, "Number of sublattices (default 1)");
  mj->add_option("--strategy", cstrategy)->check(CLI::IsMember({"pell", "primes"}));
  mj->add_option("--box", cbox, "Isotropic vector search box");
  mj->callback([&] {
    action = [&] {
      construct::MjOptions opt;
      opt.strategy = construct::parse_strategy(cstrategy);
      opt.search_box = to_size(cbox, "--box");
      opt.effort_limit = effort_limit();
      const auto cert = construct::mj_family(io::load_lattice(lfile), io::parse_vector(ch), parse_integer(cN),
                                             to_size(ccount, "--count"), opt);
      return Output{io::certificate_to_json(cert), {}, true};
    };
  });

  auto* nvc = con->add_subcommand("nv-complements", "Complements of primitive norm-d vectors");
  nvc->add_option("--lattice", lfile, "Lattice JSON file")->required();
  nvc->add_option("-d", cd)->required();
  nvc->add_option("--box", cbox);
  nvc->callback([&] {
    action = [&] {
      const auto entries = construct::nv_complements(io::load_lattice(lfile), parse_integer(cd), to_size(cbox, "--box"));
      json a = json::array();
      std::string t;
      for (const auto& e : entries) {
        const auto& fp = e.fingerprint;
        a.push_back({{"h", to_json(e.h)},
                     {"basis", to_json(e.complement_basis)},
                     {"gram", to_json(e.gram)},
                     {"group", e.group},
                     {"fingerprint",
                      {{"rank", fp.rank},
                       {"det", to_json(fp.det)},
                       {"disc_factors", to_json(fp.invariant_factors)},
                       {"signature", {fp.signature.positive, fp.signature.negative}}}}});
        t += "h " + join(e.h) + "  group " + std::to_string(e.group) + "  det " + to_string(fp.det) + "\n" +
             render_matrix(e.gram);
      }
      return Output{{{"entries", a}}, t};
    };
  });

  auto* rf = con->add_subcommand("rescaling-family", "L(1), ..., L(N)");
  rf->add_option("--lattice", lfile, "Lattice JSON file")->required();
  rf->add_option("--N", cN)->required();
  rf->callback([&] {
    action = [&] {
      const auto fam = construct::rescaling_family(io::load_lattice(lfile), to_size(cN, "--N"));
      json a = json::array();
      std::string t;
      for (const auto& l : fam) {
        a.push_back(io::lattice_to_json(l));
        t += render_matrix(l.gram()) + "\n";
      }
      return Output{{{"lattices", a}}, t};
    };
  });

  // --------------------------------------------------------------- verify
  std::string vfile;
  auto* ver = app.add_subcommand("verify", "Re-run every invariant check on a saved certificate");
  ver->add_option("certificate", vfile, "Certificate JSON file")->required();
  ver->callback([&] {
    action = [&] {
      const auto report = io::verify_certificate(io::load_json(vfile));
      json j = io::report_to_json(report);
      j.erase("format");
      std::string t;
      for (const auto& c : report) t += (c.passed ? "ok    " : "FAIL  ") + c.name + (c.detail.empty() ? "" : "  (" + c.detail + ")") + "\n";
      t += construct::all_passed(report) ? "valid\n" : "invalid\n";
      return Output{j, t, false, construct::all_passed(report) ? kExitOk : kExitDomain};
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  const bool as_json = json_flag || format == "json";
  try {
    Output o = action();
    if (as_json || o.certificate) {
      json j = o.data;
      j["format"] = io::kFormat;
      out << (as_json ? j.dump() : j.dump(2)) << "\n";
    } else {
      out << o.text;
    }
    return o.exit_code;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    const bool internal = dynamic_cast<const DomainError*>(&e) == nullptr;
    const std::string msg = (internal ? "internal error: " : "") + std::string(e.what());
    if (as_json)
      out << json{{"error", msg}, {"format", io::kFormat}}.dump() << "\n";
    else
      err << "error: " << msg << "\n";
    return kExitDomain;
  }
}

}  // namespace reflekt::cli
