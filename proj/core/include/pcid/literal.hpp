#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace pcid {

/// Three-valued truth. Declaration order follows the truth order f < u < t.
enum class TruthValue : std::uint8_t { False = 0, Unknown = 1, True = 2 };

/// Truth-order complement: t <-> f, u stays u.
constexpr TruthValue complement(TruthValue v) {
  return static_cast<TruthValue>(2 - static_cast<int>(v));
}

constexpr bool truthLeq(TruthValue a, TruthValue b) {
  return static_cast<int>(a) <= static_cast<int>(b);
}

/// Precision order: u is below both t and f; t and f are incomparable.
constexpr bool precisionLeq(TruthValue a, TruthValue b) {
  return a == TruthValue::Unknown || a == b;
}

char toChar(TruthValue v);

/// Atoms are dense 1..N inside a theory; 0 is never a valid atom.
using Atom = std::uint32_t;

/// A signed atom. Encoded DIMACS style: +a is the positive literal, -a the
/// negative one. A default-constructed literal is the invalid literal 0.
class Literal {
 public:
  constexpr Literal() = default;

  static constexpr Literal positive(Atom a) { return Literal(static_cast<std::int32_t>(a)); }
  static constexpr Literal negative(Atom a) { return Literal(-static_cast<std::int32_t>(a)); }
  static constexpr Literal fromDimacs(std::int32_t v) { return Literal(v); }
  /// Inverse of index().
  static constexpr Literal fromIndex(std::size_t idx) {
    auto a = static_cast<Atom>(idx >> 1);
    return (idx & 1U) ? negative(a) : positive(a);
  }

  constexpr Atom atom() const { return static_cast<Atom>(code_ < 0 ? -code_ : code_); }
  constexpr bool isPositive() const { return code_ > 0; }
  constexpr bool isNegative() const { return code_ < 0; }
  constexpr bool valid() const { return code_ != 0; }
  constexpr std::int32_t toDimacs() const { return code_; }

  /// Dense index: 2*atom for the positive literal, 2*atom+1 for the negative.
  constexpr std::size_t index() const {
    return (static_cast<std::size_t>(atom()) << 1) | (code_ < 0 ? 1U : 0U);
  }

  constexpr Literal operator~() const { return Literal(-code_); }

  constexpr bool operator==(const Literal&) const = default;
  constexpr std::strong_ordering operator<=>(const Literal& o) const { return index() <=> o.index(); }

 private:
  constexpr explicit Literal(std::int32_t code) : code_(code) {}
  std::int32_t code_ = 0;
};

constexpr Literal negate(Literal l) { return ~l; }

std::string toString(Literal l);

/// Mapping from atoms to truth values; atoms outside the table read as u.
class PartialInterpretation {
 public:
  PartialInterpretation() = default;
  explicit PartialInterpretation(std::size_t numAtoms)
      : values_(numAtoms + 1, TruthValue::Unknown) {}

  std::size_t numAtoms() const { return values_.empty() ? 0 : values_.size() - 1; }

  TruthValue value(Atom a) const {
    return a < values_.size() ? values_[a] : TruthValue::Unknown;
  }
  TruthValue value(Literal l) const {
    TruthValue v = value(l.atom());
    return l.isPositive() ? v : complement(v);
  }
  bool isTrue(Literal l) const { return value(l) == TruthValue::True; }
  bool isFalse(Literal l) const { return value(l) == TruthValue::False; }
  bool isUnknown(Atom a) const { return value(a) == TruthValue::Unknown; }

  void set(Atom a, TruthValue v);
  /// I[l:v]: the literal l gets value v.
  void set(Literal l, TruthValue v) { set(l.atom(), l.isPositive() ? v : complement(v)); }
  void makeTrue(Literal l) { set(l, TruthValue::True); }

  void resize(std::size_t numAtoms) { values_.resize(numAtoms + 1, TruthValue::Unknown); }

  bool isTwoValued() const;
  /// Literals that are true, ascending by atom.
  std::vector<Literal> trueLiterals() const;

  bool operator==(const PartialInterpretation& o) const;

 private:
  std::vector<TruthValue> values_;
};

/// I <=p I' pointwise.
bool precisionLeq(const PartialInterpretation& a, const PartialInterpretation& b);

/// I|S: atoms outside S become u.
PartialInterpretation restrict(const PartialInterpretation& interp, std::span<const Atom> keep);

/// Interpretation with the given literals true; sized to cover numAtoms.
PartialInterpretation interpretationOf(std::size_t numAtoms, std::span<const Literal> trueLits);

}  // namespace pcid

template <>
struct std::hash<pcid::Literal> {
  std::size_t operator()(pcid::Literal l) const noexcept { return std::hash<std::size_t>{}(l.index()); }
};
