#include "hazmax/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

namespace hazmax {

namespace {

constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

std::string_view bench_keyword(GateKind kind) {
  switch (kind) {
    case GateKind::And: return "AND";
    case GateKind::Nand: return "NAND";
    case GateKind::Or: return "OR";
    case GateKind::Nor: return "NOR";
    case GateKind::Xor: return "XOR";
    case GateKind::Xnor: return "XNOR";
    case GateKind::Inv: return "NOT";
    case GateKind::Buff: return "BUFF";
  }
  return "?";
}

std::string_view fact_atom(GateKind kind) {
  switch (kind) {
    case GateKind::And: return "and";
    case GateKind::Nand: return "nand";
    case GateKind::Or: return "or";
    case GateKind::Nor: return "nor";
    case GateKind::Xor: return "xor";
    case GateKind::Xnor: return "xnor";
    case GateKind::Inv: return "inv";
    case GateKind::Buff: return "buff";
  }
  return "?";
}

std::optional<GateKind> gate_kind_from_keyword(std::string_view keyword) {
  const std::string k = upper(keyword);
  if (k == "AND") return GateKind::And;
  if (k == "NAND") return GateKind::Nand;
  if (k == "OR") return GateKind::Or;
  if (k == "NOR") return GateKind::Nor;
  if (k == "XOR") return GateKind::Xor;
  if (k == "XNOR") return GateKind::Xnor;
  if (k == "NOT" || k == "INV") return GateKind::Inv;
  if (k == "BUF" || k == "BUFF") return GateKind::Buff;
  return std::nullopt;
}

std::optional<GateKind> gate_kind_from_atom(std::string_view atom) {
  for (GateKind kind : {GateKind::And, GateKind::Nand, GateKind::Or, GateKind::Nor, GateKind::Xor,
                        GateKind::Xnor, GateKind::Inv, GateKind::Buff}) {
    if (fact_atom(kind) == atom) return kind;
  }
  return std::nullopt;
}

std::optional<Bit> controlling_value(GateKind kind) {
  switch (kind) {
    case GateKind::And:
    case GateKind::Nand: return Bit{0};
    case GateKind::Or:
    case GateKind::Nor: return Bit{1};
    default: return std::nullopt;
  }
}

Arity arity(GateKind kind) {
  switch (kind) {
    case GateKind::Inv:
    case GateKind::Buff: return {1, 1};
    case GateKind::Xor:
    case GateKind::Xnor: return {2, 2};
    default: return {2, kUnbounded};
  }
}

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Cycle: return "cycle";
    case ViolationKind::MultipleDrivers: return "multiple drivers";
    case ViolationKind::Arity: return "arity";
    case ViolationKind::DuplicateInput: return "duplicate input";
    case ViolationKind::Undriven: return "undriven";
    case ViolationKind::Dangling: return "dangling";
  }
  return "?";
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::summary() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += std::string(to_string(v.kind)) + " (" + v.signal + "): " + v.message;
  }
  return out;
}

ValidationError::ValidationError(ValidationReport report)
    : std::runtime_error("invalid circuit: " + report.summary()), report_(std::move(report)) {}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate(const Netlist& netlist) {
  ValidationReport report;
  auto violate = [&](ViolationKind kind, const std::string& signal, std::string message) {
    report.violations.push_back({kind, signal, std::move(message)});
  };

  std::map<std::string, std::size_t> driver;  // output -> first gate index
  std::set<std::string> read;
  for (std::size_t g = 0; g < netlist.gates.size(); ++g) {
    const Gate& gate = netlist.gates[g];
    if (!driver.emplace(gate.output, g).second) {
      violate(ViolationKind::MultipleDrivers, gate.output, "signal is driven by more than one gate");
    }
    const Arity a = arity(gate.kind);
    const std::size_t n = gate.inputs.size();
    if (n < a.min || n > a.max) {
      std::string expected = a.min == a.max ? "exactly " + std::to_string(a.min)
                                            : "at least " + std::to_string(a.min);
      violate(ViolationKind::Arity, gate.output,
              std::string(bench_keyword(gate.kind)) + " gate needs " + expected + " input(s), got " +
                  std::to_string(n));
    }
    if ((gate.kind == GateKind::Xor || gate.kind == GateKind::Xnor) && n == 2 &&
        gate.inputs[0] == gate.inputs[1]) {
      violate(ViolationKind::DuplicateInput, gate.output,
              std::string(bench_keyword(gate.kind)) + " inputs must be distinct signals");
    }
    for (const auto& in : gate.inputs) read.insert(in);
  }

  const std::set<std::string> declared_in(netlist.declared_inputs.begin(),
                                          netlist.declared_inputs.end());
  const std::set<std::string> declared_out(netlist.declared_outputs.begin(),
                                           netlist.declared_outputs.end());
  for (const auto& in : declared_in) {
    if (driver.count(in)) {
      violate(ViolationKind::MultipleDrivers, in, "declared input is also driven by a gate");
    }
  }

  if (netlist.explicit_io) {
    for (const auto& s : read) {
      if (!driver.count(s) && !declared_in.count(s)) {
        violate(ViolationKind::Undriven, s, "signal is read but neither driven nor declared as input");
      }
    }
    for (const auto& in : declared_in) {
      if (!read.count(in)) {
        violate(ViolationKind::Dangling, in, "declared input drives no gate");
      }
    }
  }
  for (const auto& out : declared_out) {
    if (!driver.count(out) && !declared_in.count(out)) {
      violate(ViolationKind::Undriven, out, "declared output is never driven");
    } else if (read.count(out)) {
      report.warnings.push_back("declared output " + out +
                                " also feeds other gates and is not a primary output");
    }
  }
  if (netlist.explicit_io && !declared_out.empty()) {
    for (const auto& [out, g] : driver) {
      if (!read.count(out) && !declared_out.count(out)) {
        report.warnings.push_back("signal " + out + " drives nothing; treated as primary output");
      }
    }
  }
  if (netlist.gates.empty()) report.warnings.push_back("circuit has no gates");

  // Kahn's algorithm over the first driver of every signal; ready gates are
  // taken in name order so the result is deterministic.
  std::map<std::string, std::size_t> pending;
  std::map<std::string, std::vector<std::string>> consumers;
  for (const auto& [out, g] : driver) {
    std::set<std::string> gate_inputs(netlist.gates[g].inputs.begin(), netlist.gates[g].inputs.end());
    std::size_t count = 0;
    for (const auto& in : gate_inputs) {
      if (driver.count(in)) {
        ++count;
        consumers[in].push_back(out);
      }
    }
    pending[out] = count;
  }
  std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
  for (const auto& [out, count] : pending) {
    if (count == 0) ready.push(out);
  }
  std::vector<std::string> order;
  while (!ready.empty()) {
    std::string s = ready.top();
    ready.pop();
    order.push_back(s);
    for (const auto& c : consumers[s]) {
      if (--pending[c] == 0) ready.push(c);
    }
  }
  if (order.size() != driver.size()) {
    std::vector<std::string> stuck;
    for (const auto& [out, count] : pending) {
      if (count > 0) stuck.push_back(out);
    }
    violate(ViolationKind::Cycle, stuck.front(),
            "combinational cycle through " + join(stuck, ", "));
  } else {
    report.topo_order = std::move(order);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Circuit

Circuit Circuit::from_netlist(const Netlist& netlist) {
  ValidationReport report = validate(netlist);
  if (!report.ok()) throw ValidationError(std::move(report));

  std::set<std::string> all;
  for (const auto& g : netlist.gates) {
    all.insert(g.output);
    all.insert(g.inputs.begin(), g.inputs.end());
  }
  all.insert(netlist.declared_inputs.begin(), netlist.declared_inputs.end());
  all.insert(netlist.declared_outputs.begin(), netlist.declared_outputs.end());

  Circuit c;
  c.names_.assign(all.begin(), all.end());
  const std::size_t n = c.names_.size();
  for (std::size_t i = 0; i < n; ++i) c.index_.emplace(c.names_[i], static_cast<SignalIndex>(i));
  c.nodes_.resize(n);
  c.readers_.resize(n);
  c.fanout_.assign(n, 0);
  c.pi_position_.assign(n, 0);
  for (const auto& g : netlist.gates) {
    const SignalIndex out = c.index_.at(g.output);
    Node node{g.kind, {}, g.delay};
    for (const auto& in : g.inputs) {
      const SignalIndex s = c.index_.at(in);
      node.inputs.push_back(s);
      ++c.fanout_[s];
      c.readers_[s].push_back(out);
    }
    c.nodes_[out] = std::move(node);
  }
  for (auto& r : c.readers_) {
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
  }
  for (SignalIndex s = 0; s < n; ++s) {
    if (c.is_pi(s)) {
      c.pi_position_[s] = c.pis_.size();
      c.pis_.push_back(s);
    }
    if (c.readers_[s].empty()) c.pos_.push_back(s);
  }
  for (const auto& name : report.topo_order) c.topo_.push_back(c.index_.at(name));
  c.warnings_ = std::move(report.warnings);
  return c;
}

std::optional<SignalIndex> Circuit::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SignalIndex Circuit::index_of(std::string_view name) const {
  auto s = find(name);
  if (!s) throw std::out_of_range("unknown signal '" + std::string(name) + "'");
  return *s;
}

bool Circuit::delays_assigned() const {
  return std::all_of(topo_.begin(), topo_.end(),
                     [this](SignalIndex s) { return nodes_[s]->delay >= 1; });
}

Circuit Circuit::with_delays(std::span<const Time> delays) const {
  if (delays.size() != signal_count()) {
    throw std::invalid_argument("delay vector size does not match signal count");
  }
  Circuit copy = *this;
  for (SignalIndex s : topo_) copy.nodes_[s]->delay = delays[s];
  return copy;
}

Netlist Circuit::to_netlist() const {
  Netlist out;
  out.explicit_io = true;
  for (SignalIndex s : topo_) {
    const Node& node = *nodes_[s];
    Gate g{names_[s], node.kind, {}, node.delay};
    for (SignalIndex in : node.inputs) g.inputs.push_back(names_[in]);
    out.gates.push_back(std::move(g));
  }
  for (SignalIndex s : pis_) out.declared_inputs.push_back(names_[s]);
  for (SignalIndex s : pos_) out.declared_outputs.push_back(names_[s]);
  return out;
}

// ---------------------------------------------------------------------------
// .bench reader

namespace {

bool is_name_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ',' &&
         c != '=' && c != '#';
}

class LineCursor {
 public:
  LineCursor(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

  void skip_space() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= line_.size() || line_[pos_] == '#';
  }
  std::string name(std::string_view what) {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < line_.size() && is_name_char(line_[pos_])) ++pos_;
    if (start == pos_) fail("expected " + std::string(what));
    return std::string(line_.substr(start, pos_ - start));
  }
  bool try_consume(char c) {
    skip_space();
    if (pos_ < line_.size() && line_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!try_consume(c)) fail(std::string("expected '") + c + "'");
  }
  void expect_end() {
    if (!at_end()) fail("unexpected trailing text");
  }
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_no_, pos_ + 1);
  }
  std::size_t column() const { return pos_ + 1; }

 private:
  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

}  // namespace

Netlist read_bench(std::string_view text) {
  Netlist netlist;
  netlist.explicit_io = true;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    LineCursor cur(line, line_no);
    if (cur.at_end()) continue;
    const std::size_t head_col = cur.column();
    std::string head = cur.name("signal name or INPUT/OUTPUT");
    const std::string head_upper = upper(head);
    if ((head_upper == "INPUT" || head_upper == "OUTPUT") && cur.try_consume('(')) {
      std::string sig = cur.name("signal name");
      cur.expect(')');
      cur.expect_end();
      (head_upper == "INPUT" ? netlist.declared_inputs : netlist.declared_outputs).push_back(sig);
      continue;
    }
    cur.expect('=');
    const std::size_t kind_col = cur.column();
    std::string keyword = cur.name("gate type");
    auto kind = gate_kind_from_keyword(keyword);
    if (!kind) {
      const std::string msg = upper(keyword) == "DFF"
                                  ? "sequential element DFF is not supported"
                                  : "unknown gate type '" + keyword + "'";
      throw ParseError(msg, line_no, kind_col);
    }
    cur.expect('(');
    Gate gate{std::move(head), *kind, {}, 0};
    if (!cur.try_consume(')')) {
      do {
        gate.inputs.push_back(cur.name("input signal"));
      } while (cur.try_consume(','));
      cur.expect(')');
    }
    cur.expect_end();
    const Arity a = arity(gate.kind);
    if (gate.inputs.size() < a.min) {
      throw ParseError(std::string(bench_keyword(gate.kind)) + " gate '" + gate.output +
                           "' has arity " + std::to_string(gate.inputs.size()) + ", needs at least " +
                           std::to_string(a.min),
                       line_no, head_col);
    }
    netlist.gates.push_back(std::move(gate));
  }
  return netlist;
}

// ---------------------------------------------------------------------------
// Gate fact reader: gate_delay(Out, Kind, Delay). gate_in(Out, Kind, In).

namespace {

struct FactToken {
  enum class Type { Name, Number, String, Punct, End } type;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class FactLexer {
 public:
  explicit FactLexer(std::string_view text) : text_(text) {}

  FactToken next() {
    skip();
    if (pos_ >= text_.size()) return {FactToken::Type::End, "", line_, col()};
    const std::size_t line = line_;
    const std::size_t column = col();
    const char c = text_[pos_];
    if (c == '(' || c == ')' || c == ',' || c == '.') {
      ++pos_;
      return {FactToken::Type::Punct, std::string(1, c), line, column};
    }
    if (c == '"') {
      ++pos_;
      std::string value;
      while (true) {
        if (pos_ >= text_.size() || text_[pos_] == '\n') {
          throw ParseError("unterminated string", line, column);
        }
        char d = text_[pos_++];
        if (d == '"') break;
        if (d == '\\') {
          if (pos_ >= text_.size()) throw ParseError("unterminated string", line, column);
          const char e = text_[pos_++];
          d = e == 'n' ? '\n' : e;
        }
        value += d;
      }
      return {FactToken::Type::String, value, line, column};
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_++;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return {FactToken::Type::Number, std::string(text_.substr(start, pos_ - start)), line, column};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return {FactToken::Type::Name, std::string(text_.substr(start, pos_ - start)), line, column};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, column);
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        line_start_ = ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }
  std::size_t col() const { return pos_ - line_start_ + 1; }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

}  // namespace

Netlist read_native(std::string_view text) {
  FactLexer lexer(text);
  struct Pending {
    std::optional<GateKind> kind;
    std::optional<Time> delay;
    std::vector<std::string> inputs;
    std::size_t line = 0;
    std::size_t column = 0;
    bool has_delay_fact = false;
  };
  std::map<std::string, Pending> gates;
  std::vector<std::string> order;

  auto expect_punct = [&](char c) {
    FactToken t = lexer.next();
    if (t.type != FactToken::Type::Punct || t.text[0] != c) {
      throw ParseError(std::string("expected '") + c + "'", t.line, t.column);
    }
  };
  auto term = [&](std::string_view what) {
    FactToken t = lexer.next();
    if (t.type == FactToken::Type::Name || t.type == FactToken::Type::String ||
        t.type == FactToken::Type::Number) {
      return t;
    }
    throw ParseError("expected " + std::string(what), t.line, t.column);
  };

  while (true) {
    FactToken head = lexer.next();
    if (head.type == FactToken::Type::End) break;
    if (head.type != FactToken::Type::Name ||
        (head.text != "gate_delay" && head.text != "gate_in")) {
      throw ParseError("expected gate_delay/3 or gate_in/3 fact, got '" + head.text + "'", head.line,
                       head.column);
    }
    expect_punct('(');
    FactToken out = term("output signal");
    expect_punct(',');
    FactToken kind_tok = term("gate kind");
    expect_punct(',');
    FactToken third = term(head.text == "gate_delay" ? "delay" : "input signal");
    expect_punct(')');
    expect_punct('.');

    auto kind = kind_tok.type == FactToken::Type::Name ? gate_kind_from_atom(kind_tok.text)
                                                       : std::nullopt;
    if (!kind) {
      throw ParseError("unknown gate kind '" + kind_tok.text + "'", kind_tok.line, kind_tok.column);
    }
    auto [it, inserted] = gates.try_emplace(out.text);
    Pending& p = it->second;
    if (inserted) {
      order.push_back(out.text);
      p.line = head.line;
      p.column = head.column;
    }
    if (p.kind && *p.kind != *kind) {
      throw ParseError("conflicting gate kinds for output '" + out.text + "'", head.line,
                       head.column);
    }
    p.kind = kind;
    if (head.text == "gate_delay") {
      if (third.type != FactToken::Type::Number) {
        throw ParseError("delay must be an integer", third.line, third.column);
      }
      Time d = 0;
      auto [ptr, ec] = std::from_chars(third.text.data(), third.text.data() + third.text.size(), d);
      if (ec != std::errc{} || ptr != third.text.data() + third.text.size()) {
        throw ParseError("delay out of range", third.line, third.column);
      }
      if (p.has_delay_fact && *p.delay != d) {
        throw ParseError("conflicting delays for output '" + out.text + "'", head.line,
                         head.column);
      }
      p.delay = d;
      p.has_delay_fact = true;
    } else if (std::find(p.inputs.begin(), p.inputs.end(), third.text) == p.inputs.end()) {
      p.inputs.push_back(third.text);
    }
  }

  Netlist netlist;
  for (const auto& name : order) {
    const Pending& p = gates.at(name);
    if (!p.has_delay_fact) {
      throw ParseError("gate '" + name + "' has gate_in facts but no gate_delay fact", p.line,
                       p.column);
    }
    if (p.inputs.empty()) {
      throw ParseError("gate '" + name + "' has a gate_delay fact but no gate_in facts", p.line,
                       p.column);
    }
    std::vector<std::string> inputs = p.inputs;
    // Facts form a set, so AND(a, a) arrives as a single gate_in; restore
    // the idempotent two-input form.
    if (inputs.size() == 1 && controlling_value(*p.kind)) inputs.push_back(inputs.front());
    netlist.gates.push_back(Gate{name, *p.kind, std::move(inputs), *p.delay});
  }
  return netlist;
}

Circuit parse_bench(std::string_view text) { return Circuit::from_netlist(read_bench(text)); }
Circuit parse_native(std::string_view text) { return Circuit::from_netlist(read_native(text)); }

// ---------------------------------------------------------------------------
// Delays

Circuit assign_delays(const Circuit& circuit, const DelayModel& model) {
  std::vector<Time> delays(circuit.signal_count(), 0);
  if (std::holds_alternative<delay_model::Unit>(model)) {
    for (SignalIndex s : circuit.topo()) delays[s] = 1;
  } else if (const auto* fanout = std::get_if<delay_model::Fanout>(&model)) {
    if (fanout->scale < 1) throw std::invalid_argument("fanout scale must be >= 1");
    for (SignalIndex s : circuit.topo()) {
      delays[s] = std::max<Time>(1, fanout->scale * static_cast<Time>(circuit.fanout(s)));
    }
  } else {
    const auto& table = std::get<delay_model::Explicit>(model).delays;
    for (const auto& [name, d] : table) {
      auto s = circuit.find(name);
      if (!s || circuit.is_pi(*s)) {
        throw std::invalid_argument("delay given for '" + name + "', which is not a gate output");
      }
      if (d < 1) {
        throw std::invalid_argument("delay of '" + name + "' must be positive, got " +
                                    std::to_string(d));
      }
    }
    for (SignalIndex s : circuit.topo()) {
      auto it = table.find(circuit.name(s));
      if (it != table.end()) {
        delays[s] = it->second;
      } else if (circuit.gate(s).delay >= 1) {
        delays[s] = circuit.gate(s).delay;
      } else {
        throw std::invalid_argument("no delay for gate '" + circuit.name(s) + "'");
      }
    }
  }
  return circuit.with_delays(delays);
}

DelayModel parse_delay_model(std::string_view text) {
  text = trim(text);
  if (text == "unit") return delay_model::Unit{};
  if (text == "fanout") return delay_model::Fanout{};
  if (text.starts_with("fanout:")) {
    const std::string_view num = text.substr(7);
    Time k = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), k);
    if (ec != std::errc{} || ptr != num.data() + num.size() || k < 1) {
      throw std::invalid_argument("bad fanout scale in '" + std::string(text) + "'");
    }
    return delay_model::Fanout{k};
  }
  throw std::invalid_argument("unknown delay model '" + std::string(text) + "'");
}

std::map<std::string, Time> parse_delay_file(std::string_view text) {
  std::map<std::string, Time> delays;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string name;
    if (!(fields >> name)) continue;
    long long d = 0;
    std::string extra;
    if (!(fields >> d) || (fields >> extra)) {
      throw ParseError("expected '<signal> <delay>'", line_no, 1);
    }
    if (!delays.emplace(name, static_cast<Time>(d)).second) {
      throw ParseError("duplicate delay for '" + name + "'", line_no, 1);
    }
  }
  return delays;
}

}  // namespace hazmax
