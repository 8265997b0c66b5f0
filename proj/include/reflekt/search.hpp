#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "reflekt/integer.hpp"
#include "reflekt/matrix.hpp"

namespace reflekt {

/// Which norms a box search reports.
struct NormFilter {
  enum class Kind { Equal, Negative, Any };
  Kind kind = Kind::Any;
  Integer value = 0;

  static NormFilter equal(Integer n) { return {Kind::Equal, std::move(n)}; }
  static NormFilter negative() { return {Kind::Negative, 0}; }
};

/// Visitor receives the coordinates and the norm; return false to stop early.
using BoxVisitor = std::function<bool(std::span<const std::int64_t>, const Integer&)>;

/// Walks every primitive x in [-box, box]^r with first nonzero coordinate
/// positive, in lexicographic order, reporting those whose norm passes `filter`.
/// With `shell_only`, only vectors with max |x_i| == box are visited.
///
/// Norms are computed incrementally in 128-bit arithmetic when the Gram entries
/// fit in 64 bits and box <= 2^20; otherwise GMP integers are used.
/// Returns false if the visitor stopped the walk.
bool box_search(const IntMatrix& gram, std::size_t box, const NormFilter& filter,
                const BoxVisitor& visit, bool shell_only = false);

Vector to_vector(std::span<const std::int64_t> x);

}  // namespace reflekt
