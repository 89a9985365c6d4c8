#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcid/formula.hpp"
#include "pcid/theory.hpp"

namespace pcid {

// ---------------------------------------------------------------------------
// .cid: DIMACS-flavoured DEFNF format
//
//   % comment
//   p cid <natoms>
//   t <atom>
//   r <head> <c|d> <lit>... 0
// ---------------------------------------------------------------------------

DefnfTheory parseCid(std::string_view text);
std::string writeCid(const DefnfTheory& theory);

// ---------------------------------------------------------------------------
// .pcid: general PC(ID) as s-expressions
//
//   (theory (constraint F)* (define (rule <name> F)*)*)
//   F ::= <name> | (not F) | (and F...) | (or F...)
// ---------------------------------------------------------------------------

/// A general theory before normalization. Atoms are numbered by first
/// appearance; symbols[a] is the name of atom a (symbols[0] unused).
struct PcidAst {
  struct DefinedRule {
    Atom head = 0;
    Formula body;
  };

  std::vector<std::string> symbols{""};
  std::vector<Formula> constraints;
  std::vector<std::vector<DefinedRule>> definitions;

  std::size_t numAtoms() const { return symbols.size() - 1; }
  /// Existing id for name, or a fresh one.
  Atom intern(const std::string& name);
  std::optional<Atom> lookup(std::string_view name) const;
};

PcidAst parsePcid(std::string_view text);

struct NormalizedTheory {
  DefnfTheory theory;
  /// Atoms 1..numOriginalAtoms keep their input ids; the rest are fresh.
  std::size_t numOriginalAtoms = 0;
};

/// Tseitin-style flattening into DEFNF. Fresh atoms get one rule each and all
/// constraints are conjoined under a single theory atom. Throws Error on
/// atoms outside the symbol table or heads defined in two definitions.
NormalizedTheory normalizeToDefnf(const PcidAst& ast);

/// {"atoms": {"<id>": "<name>", ...}, "theory_atom": id, "original_atoms": n}
std::string nameMapJson(const NormalizedTheory& normalized);

/// Checks the structural DEFNF conditions; returns a description of the first
/// violation, or nothing when the theory is in normal form.
std::optional<std::string> defnfViolation(const DefnfTheory& theory);

/// Reads a .cid or .pcid file (chosen by extension, .pcid normalized).
DefnfTheory loadTheory(const std::string& path);
std::string readFile(const std::string& path);

// ---------------------------------------------------------------------------
// .trc replay traces
//
//   + <lit>            literal becomes true
//   - <lit>            the literal's atom becomes unknown
//   ? <lit>            query relevance (prints "<lit> 0|1")
//   # expect <lit> 0|1 assert relevance
// ---------------------------------------------------------------------------

struct TraceEvent {
  enum class Kind { BecomesTrue, BecomesUnknown, QueryRelevant, ExpectRelevant };

  Kind kind = Kind::BecomesTrue;
  Literal literal;
  std::optional<bool> expected;  // ExpectRelevant only
  std::size_t line = 0;

  bool operator==(const TraceEvent& o) const {
    return kind == o.kind && literal == o.literal && expected == o.expected;
  }
};

std::vector<TraceEvent> parseTrace(std::string_view text);
std::string writeTrace(std::span<const TraceEvent> events);

}  // namespace pcid
