#include <charconv>
#include <sstream>

#include "pcid/error.hpp"
#include "pcid/io.hpp"

namespace pcid {

namespace {

Literal parseLiteral(std::string_view tok, std::size_t lineNo) {
  std::int32_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || v == 0) {
    throw ParseError(lineNo, "expected a nonzero literal, got '" + std::string(tok) + "'");
  }
  return Literal::fromDimacs(v);
}

}  // namespace

std::vector<TraceEvent> parseTrace(std::string_view text) {
  std::vector<TraceEvent> events;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty() || toks[0][0] == '%') continue;

    TraceEvent ev;
    ev.line = lineNo;
    const std::string& op = toks[0];
    if (op == "#") {
      if (toks.size() < 2 || toks[1] != "expect") continue;  // plain comment
      if (toks.size() != 4 || (toks[3] != "0" && toks[3] != "1")) {
        throw ParseError(lineNo, "expected '# expect <lit> <0|1>'");
      }
      ev.kind = TraceEvent::Kind::ExpectRelevant;
      ev.literal = parseLiteral(toks[2], lineNo);
      ev.expected = toks[3] == "1";
    } else if (op == "+" || op == "-" || op == "?") {
      if (toks.size() != 2) throw ParseError(lineNo, "expected '" + op + " <lit>'");
      ev.kind = op == "+" ? TraceEvent::Kind::BecomesTrue
              : op == "-" ? TraceEvent::Kind::BecomesUnknown
                          : TraceEvent::Kind::QueryRelevant;
      ev.literal = parseLiteral(toks[1], lineNo);
    } else {
      throw ParseError(lineNo, "unknown trace event '" + op + "'");
    }
    events.push_back(ev);
  }
  return events;
}

std::string writeTrace(std::span<const TraceEvent> events) {
  std::ostringstream out;
  for (const TraceEvent& ev : events) {
    switch (ev.kind) {
      case TraceEvent::Kind::BecomesTrue: out << "+ " << ev.literal.toDimacs() << '\n'; break;
      case TraceEvent::Kind::BecomesUnknown: out << "- " << ev.literal.toDimacs() << '\n'; break;
      case TraceEvent::Kind::QueryRelevant: out << "? " << ev.literal.toDimacs() << '\n'; break;
      case TraceEvent::Kind::ExpectRelevant:
        out << "# expect " << ev.literal.toDimacs() << ' ' << (ev.expected.value_or(false) ? 1 : 0) << '\n';
        break;
    }
  }
  return out.str();
}

}  // namespace pcid
