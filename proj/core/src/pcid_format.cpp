#include <cctype>

#include "pcid/error.hpp"
#include "pcid/io.hpp"

namespace pcid {

Atom PcidAst::intern(const std::string& name) {
  if (auto a = lookup(name)) return *a;
  symbols.push_back(name);
  return static_cast<Atom>(symbols.size() - 1);
}

std::optional<Atom> PcidAst::lookup(std::string_view name) const {
  for (std::size_t i = 1; i < symbols.size(); ++i) {
    if (symbols[i] == name) return static_cast<Atom>(i);
  }
  return std::nullopt;
}

namespace {

struct SExpr {
  bool isList = false;
  std::string atom;
  std::vector<SExpr> items;
  std::size_t line = 0;
};

class SExprReader {
 public:
  explicit SExprReader(std::string_view text) : text_(text) {}

  SExpr read() {
    skip();
    if (pos_ >= text_.size()) throw ParseError(line_, "unexpected end of input");
    SExpr e;
    e.line = line_;
    if (text_[pos_] == '(') {
      ++pos_;
      e.isList = true;
      for (;;) {
        skip();
        if (pos_ >= text_.size()) throw ParseError(e.line, "unbalanced '('");
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        e.items.push_back(read());
      }
      return e;
    }
    if (text_[pos_] == ')') throw ParseError(line_, "unexpected ')'");
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != ';') {
      ++pos_;
    }
    e.atom = std::string(text_.substr(start, pos_ - start));
    return e;
  }

  bool atEnd() {
    skip();
    return pos_ >= text_.size();
  }
  std::size_t line() const { return line_; }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';' || c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

bool isKeyword(const SExpr& e, std::string_view kw) {
  return e.isList && !e.items.empty() && !e.items[0].isList && e.items[0].atom == kw;
}

Formula toFormula(const SExpr& e, PcidAst& ast) {
  if (!e.isList) {
    if (e.atom.empty()) throw ParseError(e.line, "empty name");
    return Formula::lit(Literal::positive(ast.intern(e.atom)));
  }
  if (e.items.empty() || e.items[0].isList) throw ParseError(e.line, "expected (not|and|or ...)");
  const std::string& op = e.items[0].atom;
  std::vector<Formula> args;
  for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(toFormula(e.items[i], ast));
  if (op == "not") {
    if (args.size() != 1) throw ParseError(e.line, "'not' takes exactly one argument");
    return Formula::negation(std::move(args[0]));
  }
  if (op == "and") return Formula::conjunction(std::move(args));
  if (op == "or") return Formula::disjunction(std::move(args));
  throw ParseError(e.line, "unknown connective '" + op + "'");
}

}  // namespace

PcidAst parsePcid(std::string_view text) {
  SExprReader reader(text);
  SExpr root = reader.read();
  if (!reader.atEnd()) throw ParseError(reader.line(), "trailing input after (theory ...)");
  if (!isKeyword(root, "theory")) throw ParseError(root.line, "expected (theory ...)");

  PcidAst ast;
  for (std::size_t i = 1; i < root.items.size(); ++i) {
    const SExpr& item = root.items[i];
    if (isKeyword(item, "constraint")) {
      if (item.items.size() != 2) throw ParseError(item.line, "(constraint F) takes one formula");
      ast.constraints.push_back(toFormula(item.items[1], ast));
    } else if (isKeyword(item, "define")) {
      std::vector<PcidAst::DefinedRule> rules;
      for (std::size_t k = 1; k < item.items.size(); ++k) {
        const SExpr& r = item.items[k];
        if (!isKeyword(r, "rule") || r.items.size() != 3 || r.items[1].isList) {
          throw ParseError(r.line, "expected (rule <name> F)");
        }
        Atom head = ast.intern(r.items[1].atom);
        rules.push_back({head, toFormula(r.items[2], ast)});
      }
      ast.definitions.push_back(std::move(rules));
    } else {
      throw ParseError(item.line, "expected (constraint F) or (define ...)");
    }
  }
  return ast;
}

}  // namespace pcid
