#include "onred/instance_format.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <vector>

namespace onred {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  int column;
};

std::vector<Token> split_line(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    out.push_back(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

class LineParser {
 public:
  LineParser(int line, std::vector<Token> tokens) : line_(line), tokens_(std::move(tokens)) {}

  [[noreturn]] void fail(const Token& tok, const std::string& msg) const {
    throw ParseError(line_, tok.column, msg);
  }

  const Token& at(std::size_t i) const { return tokens_[i]; }
  std::size_t size() const { return tokens_.size(); }

  // `key=value`; returns the value.
  std::string_view keyed(std::size_t i, std::string_view key) const {
    const Token& tok = tokens_[i];
    if (tok.text.size() <= key.size() || tok.text.substr(0, key.size()) != key ||
        tok.text[key.size()] != '=') {
      fail(tok, "expected " + std::string(key) + "=...");
    }
    return tok.text.substr(key.size() + 1);
  }

  std::int64_t integer(const Token& tok, std::string_view text) const {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
      fail(tok, "expected an integer, got '" + std::string(text) + "'");
    }
    return v;
  }

  Bit bit_value(std::size_t i, std::string_view key) const {
    std::string_view v = keyed(i, key);
    if (v == "0") return Bit::zero;
    if (v == "1") return Bit::one;
    fail(tokens_[i], std::string(key) + " must be 0 or 1, got '" + std::string(v) + "'");
  }

 private:
  int line_;
  std::vector<Token> tokens_;
};

RequestPayload parse_payload(const LineParser& p, ProblemKind kind, std::size_t index) {
  const Token& tok = p.at(1);
  switch (kind) {
    case ProblemKind::asg: {
      if (tok.text != "-") p.fail(tok, "asg requests take '-' as payload");
      return Prompt{};
    }
    case ProblemKind::bdis:
    case ProblemKind::cli:
    case ProblemKind::mcs: {
      std::string_view v = p.keyed(1, "edges");
      VertexArrival va;
      for (std::string_view part : split_commas(v)) {
        std::int64_t j = p.integer(tok, part);
        if (j < 1 || static_cast<std::size_t>(j) > index) {
          p.fail(tok, "edge to " + std::to_string(j) + " does not name an earlier request");
        }
        va.neighbours.push_back(static_cast<int>(j - 1));
      }
      std::sort(va.neighbours.begin(), va.neighbours.end());
      if (std::adjacent_find(va.neighbours.begin(), va.neighbours.end()) != va.neighbours.end()) {
        p.fail(tok, "repeated edge");
      }
      return va;
    }
    case ProblemKind::sp: {
      std::string_view v = p.keyed(1, "set");
      SetArrival sa;
      for (std::string_view part : split_commas(v)) {
        if (part.empty()) p.fail(tok, "empty element token");
        sa.elements.emplace_back(part);
      }
      if (sa.elements.empty()) p.fail(tok, "empty set");
      std::sort(sa.elements.begin(), sa.elements.end());
      if (std::adjacent_find(sa.elements.begin(), sa.elements.end()) != sa.elements.end()) {
        p.fail(tok, "repeated element");
      }
      return sa;
    }
    case ProblemKind::sch: {
      std::string_view v = p.keyed(1, "interval");
      auto parts = split_commas(v);
      if (parts.size() != 2) p.fail(tok, "interval needs lo,hi");
      try {
        return IntervalArrival{parse_rational(parts[0]), parse_rational(parts[1])};
      } catch (const std::invalid_argument& e) {
        p.fail(tok, e.what());
      }
    }
    case ProblemKind::mm: {
      std::string_view v = p.keyed(1, "edge");
      auto parts = split_commas(v);
      if (parts.size() != 2 || parts[0].empty() || parts[1].empty()) p.fail(tok, "edge needs u,v");
      return EdgeArrival{std::string(parts[0]), std::string(parts[1])};
    }
  }
  p.fail(tok, "unsupported problem");
}

}  // namespace

Instance parse_instance_text(std::string_view text) {
  Instance inst;
  bool have_header = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    for (char c : line) {
      if (static_cast<unsigned char>(c) >= 127 || (static_cast<unsigned char>(c) < 32 && c != '\t' && c != '\r')) {
        throw ParseError(line_no, 1, "non-printable character");
      }
    }
    LineParser p(line_no, split_line(line));
    if (p.size() == 0) continue;
    if (!have_header) {
      if (p.at(0).text != "problem") p.fail(p.at(0), "expected the 'problem' header first");
      if (p.size() < 3 || p.size() > 4) p.fail(p.at(0), "header is: problem <kind> t=<int|inf> [k=<int>]");
      auto kind = problem_from_name(p.at(1).text);
      if (!kind) p.fail(p.at(1), "unknown problem '" + std::string(p.at(1).text) + "'");
      inst.problem = *kind;
      std::string_view t = p.keyed(2, "t");
      if (t == "inf") {
        inst.t = Bound::unbounded();
      } else {
        std::int64_t v = p.integer(p.at(2), t);
        if (v < 1) p.fail(p.at(2), "t must be positive");
        inst.t = Bound::of(static_cast<int>(v));
      }
      if (p.size() == 4) {
        if (inst.problem != ProblemKind::mcs) p.fail(p.at(3), "k= is only allowed for mcs");
        std::int64_t k = p.integer(p.at(3), p.keyed(3, "k"));
        if (k < 1) p.fail(p.at(3), "k must be positive");
        inst.colors = static_cast<int>(k);
      } else if (inst.problem == ProblemKind::mcs) {
        p.fail(p.at(0), "mcs needs k=<int>");
      }
      have_header = true;
      continue;
    }
    if (p.at(0).text != "req") p.fail(p.at(0), "expected 'req'");
    if (p.size() != 4) p.fail(p.at(0), "request is: req <payload> true=<0|1> pred=<0|1>");
    Request r;
    r.payload = parse_payload(p, inst.problem, inst.size());
    r.truth = p.bit_value(2, "true");
    r.prediction = p.bit_value(3, "pred");
    inst.requests.push_back(std::move(r));
  }
  if (!have_header) throw ParseError(line_no, 1, "missing 'problem' header");
  return inst;
}

ParsedInstance parse_instance(std::string_view text) {
  ParsedInstance out;
  out.instance = parse_instance_text(text);
  out.validity = validate_instance(out.instance);
  return out;
}

std::string serialize_payload(const RequestPayload& payload) {
  std::ostringstream out;
  if (std::holds_alternative<Prompt>(payload)) {
    out << '-';
  } else if (auto* va = std::get_if<VertexArrival>(&payload)) {
    out << "edges=";
    for (std::size_t k = 0; k < va->neighbours.size(); ++k) out << (k ? "," : "") << va->neighbours[k] + 1;
  } else if (auto* sa = std::get_if<SetArrival>(&payload)) {
    out << "set=";
    for (std::size_t k = 0; k < sa->elements.size(); ++k) out << (k ? "," : "") << sa->elements[k];
  } else if (auto* ia = std::get_if<IntervalArrival>(&payload)) {
    out << "interval=" << to_string(ia->lo) << ',' << to_string(ia->hi);
  } else if (auto* ea = std::get_if<EdgeArrival>(&payload)) {
    out << "edge=" << ea->u << ',' << ea->v;
  }
  return out.str();
}

std::string serialize_instance(const Instance& instance) {
  std::ostringstream out;
  out << "problem " << name_of(instance.problem) << " t=" << instance.t.to_string();
  if (instance.problem == ProblemKind::mcs) out << " k=" << instance.colors;
  out << '\n';
  for (const auto& r : instance.requests) {
    out << "req " << serialize_payload(r.payload) << " true=" << as_int(r.truth)
        << " pred=" << as_int(r.prediction) << '\n';
  }
  return out.str();
}

}  // namespace onred
