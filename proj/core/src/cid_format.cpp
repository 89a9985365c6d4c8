#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "pcid/error.hpp"
#include "pcid/io.hpp"

namespace pcid {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long toInt(std::string_view tok, std::size_t lineNo) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(lineNo, "expected an integer, got '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

DefnfTheory parseCid(std::string_view text) {
  DefnfTheory theory;
  bool haveHeader = false;
  bool haveTheoryAtom = false;
  std::size_t lineNo = 0;
  std::size_t pos = 0;

  auto atomInRange = [&](long long v, std::size_t ln) {
    if (v <= 0 || static_cast<unsigned long long>(v) > theory.numAtoms) {
      throw ParseError(ln, "atom " + std::to_string(v) + " out of range 1.." + std::to_string(theory.numAtoms));
    }
    return static_cast<Atom>(v);
  };

  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineNo;

    auto toks = tokenize(line);
    if (toks.empty() || toks[0].front() == '%') continue;

    if (!haveHeader) {
      if (toks.size() != 3 || toks[0] != "p" || toks[1] != "cid") {
        throw ParseError(lineNo, "expected header 'p cid <natoms>'");
      }
      long long n = toInt(toks[2], lineNo);
      if (n < 0) throw ParseError(lineNo, "negative atom count");
      theory.numAtoms = static_cast<std::size_t>(n);
      haveHeader = true;
      continue;
    }

    if (toks[0] == "t") {
      if (haveTheoryAtom) throw ParseError(lineNo, "duplicate 't' line");
      if (toks.size() != 2) throw ParseError(lineNo, "expected 't <atom>'");
      theory.theoryAtom = atomInRange(toInt(toks[1], lineNo), lineNo);
      haveTheoryAtom = true;
    } else if (toks[0] == "r") {
      if (toks.size() < 4) throw ParseError(lineNo, "expected 'r <head> <c|d> <lit>... 0'");
      Rule rule;
      rule.head = atomInRange(toInt(toks[1], lineNo), lineNo);
      if (toks[2] == "c") rule.connective = Connective::And;
      else if (toks[2] == "d") rule.connective = Connective::Or;
      else throw ParseError(lineNo, "connective must be 'c' or 'd'");
      if (toks.back() != "0") throw ParseError(lineNo, "rule line must end with 0");
      for (std::size_t i = 3; i + 1 < toks.size(); ++i) {
        long long v = toInt(toks[i], lineNo);
        if (v == 0) throw ParseError(lineNo, "0 inside rule body");
        atomInRange(v < 0 ? -v : v, lineNo);
        Literal l = Literal::fromDimacs(static_cast<std::int32_t>(v));
        if (std::find(rule.body.begin(), rule.body.end(), l) == rule.body.end()) rule.body.push_back(l);
      }
      if (theory.definition.defines(rule.head)) {
        throw ParseError(lineNo, "atom defined twice: " + std::to_string(rule.head));
      }
      theory.definition.add(std::move(rule));
    } else {
      throw ParseError(lineNo, "unknown line type '" + std::string(toks[0]) + "'");
    }
  }

  if (!haveHeader) throw ParseError(0, "missing header 'p cid <natoms>'");
  if (!haveTheoryAtom) throw ParseError(0, "missing 't <atom>' line");
  if (!theory.definition.defines(theory.theoryAtom)) {
    throw ParseError(0, "theory atom " + std::to_string(theory.theoryAtom) + " is not defined");
  }
  return theory;
}

std::string writeCid(const DefnfTheory& theory) {
  std::ostringstream out;
  out << "p cid " << theory.numAtoms << "\n";
  out << "t " << theory.theoryAtom << "\n";
  for (const Rule& r : theory.definition.rules()) {
    out << "r " << r.head << (r.isConjunctive() ? " c" : " d");
    for (Literal l : r.body) out << ' ' << l.toDimacs();
    out << " 0\n";
  }
  return out.str();
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DefnfTheory loadTheory(const std::string& path) {
  std::string text = readFile(path);
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".pcid") == 0) {
    return normalizeToDefnf(parsePcid(text)).theory;
  }
  return parseCid(text);
}

}  // namespace pcid
