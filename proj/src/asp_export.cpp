#include "hazmax/asp_export.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <vector>

namespace hazmax {

namespace {

// Signals, PI/PO inference and gate values.
constexpr std::string_view kSignalRules = R"(signal(V) :- gate_in(V, _, _).
signal(V) :- gate_in(_, _, V).
output_node(V) :- signal(V), not gate_in(_, _, V).
input_node(V) :- signal(V), not gate_in(V, _, _).
boolean(0). boolean(1).
input_vec_no(1). input_vec_no(2).
1 = {v(V, InpVec, X) : boolean(X)} :- input_node(V), input_vec_no(InpVec).
v(Y, InpVec, V) :- gate_in(Y, buff, A), v(A, InpVec, V).
v(Y, InpVec, Vout) :- gate_in(Y, inv, A), v(A, InpVec, Vin), inv(Vin, Vout).
inv(0, 1). inv(1, 0).
neutral((and;nand), 1). controlling((and;nand), 0).
neutral((or;nor), 0).   controlling((or;nor), 1).
out_val(and, neutral, 1). out_val(and, controlling, 0).
out_val(or, neutral, 0).  out_val(or, controlling, 1).
out_val(nand, Element, 1-OutVal) :- out_val(and, Element, OutVal).
out_val(nor, Element, 1-OutVal) :- out_val(or, Element, OutVal).
v(Y, InpVec, OutValue) :-
    gate_in(Y, Gate, In),
    controlling(Gate, Controlling),
    out_val(Gate, controlling, OutValue),
    v(In, InpVec, Controlling).
v(Y, InpVec, OutValue) :-
    gate_in(Y, Gate, _), input_vec_no(InpVec),
    neutral(Gate, Neutral),
    out_val(Gate, neutral, OutValue),
    v(In, InpVec, Neutral) : gate_in(Y, Gate, In).
v(Y, InpVec, OutValue) :-
    gate_in(Y, Gate, A), gate_in(Y, Gate, B), A != B,
    out_on_equal(Gate, OutValue),
    v(A, InpVec, VA), v(B, InpVec, VB), VA == VB.
v(Y, InpVec, InvOutValue) :-
    gate_in(Y, Gate, A), gate_in(Y, Gate, B), A != B,
    out_on_equal(Gate, OutValue), inv(OutValue, InvOutValue),
    v(A, InpVec, VA), v(B, InpVec, VB), VA != VB.
out_on_equal(xor, 0). out_on_equal(xnor, 1).
)";

// Delay composition, hazard masking, STA horizon and the objective.
constexpr std::string_view kTimeRules = R"(t(V, InpVec, 0) :- input_node(V), input_vec_no(InpVec).
eta(SignalY) :- fixed(SignalY),
    ts(SignalY, 1, Ey), ts(SignalY, 2, Ly), Ly-Ey <= 0.
fixed(SignalY) :- v(SignalY, 1, Vy), v(SignalY, 2, Vy).
t(SignalY, 1, EyStar+Delay) :- EyStar != MaxTime, maxtime(MaxTime),
    not eta(SignalY), ts(SignalY, 1, EyStar), gate_delay(SignalY, _, Delay).
t(SignalY, 2, LyStar+Delay) :- LyStar != -1,
    not eta(SignalY), ts(SignalY, 2, LyStar), gate_delay(SignalY, _, Delay).
t(SignalY, 1, MaxTime) :- maxtime(MaxTime), ts(SignalY, 1, MaxTime).
t(SignalY, 1, MaxTime) :- maxtime(MaxTime), eta(SignalY).
t(SignalY, 2, -1) :- ts(SignalY, 2, -1).
t(SignalY, 2, -1) :- eta(SignalY).
static_timing_analysis(V, 0) :- input_node(V).
static_timing_analysis(Out, MaxIn + Delay) :- gate_in(Out, Gate, In),
    gate_delay(Out, Gate, Delay), static_timing_analysis(In, MaxIn).
maxtime(MaxTime+1) :- #max{T: static_timing_analysis(V, T), output_node(V)} = MaxTime.
max_output_delay(MaxOutDelay) :- MaxOutDelay = #max{L, OutNode : t(OutNode, 2, L), output_node(OutNode) }.
#maximize{ MaxOutDelay: max_output_delay(MaxOutDelay) }.
)";

constexpr std::string_view kUnaryRule =
    R"(ts(SignalY, InpVec, TA) :- t(SignalA, InpVec, TA), gate_in(SignalY, (inv;buff), SignalA).
)";

// Aggregate-based switching windows.
constexpr std::string_view kBasicRules = R"(ts(SignalY, 1, MinE) :-
    gate_in(SignalY, Gate, _),
    controlling(Gate, Controlling),
    #count{ I : gate_in(SignalY, Gate, I), v(I, 1, Controlling) } = 0,
    MinE = #min { T : gate_in(SignalY, Gate, I), t(I, 1, T) }.
ts(SignalY, 1, MaxE) :-
    gate_in(SignalY, Gate, _),
    controlling(Gate, Controlling),
    #count{ I : gate_in(SignalY, Gate, I), v(I, 1, Controlling) } > 0,
    MaxE = #max { T : gate_in(SignalY, Gate, I), v(I, 1, Controlling), t(I, 1, T) }.
ts(SignalY, 2, MaxL) :-
    gate_in(SignalY, Gate, _),
    controlling(Gate, Controlling),
    #count{ I : gate_in(SignalY, Gate, I), v(I, 2, Controlling) } = 0,
    MaxL = #max { T : gate_in(SignalY, Gate, I), t(I, 2, T) }.
ts(SignalY, 2, MinL) :-
    gate_in(SignalY, Gate, _),
    controlling(Gate, Controlling),
    #count{ I : gate_in(SignalY, Gate, I), v(I, 2, Controlling) } > 0,
    MinL = #min { T : gate_in(SignalY, Gate, I), v(I, 2, Controlling), t(I, 2, T) }.
ts(SignalY, 1, EA) :- SignalA != SignalB, EB >= EA,
    t(SignalA, 1, EA), gate_in(SignalY, (xor;xnor), SignalA),
    t(SignalB, 1, EB), gate_in(SignalY, (xor;xnor), SignalB).
ts(SignalY, 2, LB) :- SignalA != SignalB, LB >= LA,
    t(SignalA, 2, LA), gate_in(SignalY, (xor;xnor), SignalA),
    t(SignalB, 2, LB), gate_in(SignalY, (xor;xnor), SignalB).
)";

// Linear-size switching windows through the "time >= bound" relation tgeq/3.
constexpr std::string_view kAdvancedRules = R"(tgeq(S, InpVec, V) :- t(S, InpVec, V).
tgeq(S, InpVec, V-1) :- V>=0, tgeq(S, InpVec, V).
ts(SignalY, 1, EA) :- t(SignalA, 1, EA),
    all_neutral_except(SignalY, 1, SignalA),
    tgeq(SignalB, 1, EA) : gate_in(SignalY, Gate, SignalB), SignalB != SignalA.
ts(SignalY, 1, EB) :- t(SignalB, 1, EB),
    gate_in(SignalY, Gate, SignalB), v(SignalB, 1, V), controlling(Gate, V),
    not tgeq(SignalA, 1, EB + 1) : gate_in(SignalY, Gate, SignalA), v(SignalA, 1, V), SignalA != SignalB.
ts(SignalY, 2, LA) :- t(SignalA, 2, LA),
    all_neutral_except(SignalY, 2, SignalA),
    not tgeq(SignalB, 2, LA + 1) : gate_in(SignalY, Gate, SignalB), SignalB != SignalA.
ts(SignalY, 2, LB) :- t(SignalB, 2, LB),
    gate_in(SignalY, Gate, SignalB), v(SignalB, 2, V), controlling(Gate, V),
    tgeq(SignalA, 2, LB) : gate_in(SignalY, Gate, SignalA), v(SignalA, 2, V), SignalA != SignalB.
ts(SignalY, 1, Min) :- t(SignalA, 1, Min),
    gate_in(SignalY, (xor;xnor), SignalA),
    gate_in(SignalY, (xor;xnor), SignalB),
    SignalA != SignalB, tgeq(SignalB, 1, Min).
ts(SignalY, 2, Max) :- t(SignalA, 2, Max),
    gate_in(SignalY, (xor;xnor), SignalA),
    gate_in(SignalY, (xor;xnor), SignalB),
    SignalA != SignalB, not tgeq(SignalB, 2, Max + 1).
all_neutral_except(SignalY, BitVec, SignalA) :-
    input_vec_no(BitVec),
    gate_in(SignalY, Gate, SignalA), neutral(Gate, V),
    v(SignalB, BitVec, V) : gate_in(SignalY, Gate, SignalB), SignalB != SignalA.
)";

bool plain_constant(std::string_view name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name.front()))) return false;
  if (name == "not") return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

std::string_view to_string(EncodingVariant variant) {
  return variant == EncodingVariant::Basic ? "basic" : "advanced";
}

std::string asp_term(std::string_view name) {
  if (plain_constant(name)) return std::string(name);
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += '"';
  return out;
}

std::string emit_facts(const Circuit& circuit) {
  std::vector<SignalIndex> gates(circuit.topo().begin(), circuit.topo().end());
  std::sort(gates.begin(), gates.end());  // index order is name order
  std::ostringstream out;
  for (SignalIndex s : gates) {
    const auto& gate = circuit.gate(s);
    const std::string y = asp_term(circuit.name(s));
    const std::string_view kind = fact_atom(gate.kind);
    out << "gate_delay(" << y << ", " << kind << ", " << gate.delay << ").\n";
    std::set<SignalIndex> inputs(gate.inputs.begin(), gate.inputs.end());
    for (SignalIndex in : inputs) {
      out << "gate_in(" << y << ", " << kind << ", " << asp_term(circuit.name(in)) << ").\n";
    }
  }
  return out.str();
}

AspProgram emit_program(const Circuit& circuit, EncodingVariant variant) {
  std::string text;
  text += "% circuit facts\n";
  text += emit_facts(circuit);
  text += "\n% signals and logic values\n";
  text += kSignalRules;
  text += "\n% arrival times, horizon and objective\n";
  text += kTimeRules;
  text += "\n% switching windows (";
  text += to_string(variant);
  text += ")\n";
  text += variant == EncodingVariant::Basic ? kBasicRules : kAdvancedRules;
  text += kUnaryRule;
  return {variant, std::move(text)};
}

// ---------------------------------------------------------------------------
// Answer sets

namespace {

struct Atom {
  std::string name;
  std::vector<std::string> args;  // unquoted
  std::vector<bool> numeric;
};

class AtomReader {
 public:
  explicit AtomReader(std::string_view text) : text_(text) {}

  std::optional<Atom> next() {
    skip_space();
    if (pos_ >= text_.size()) return std::nullopt;
    Atom atom;
    atom.name = identifier();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      while (true) {
        skip_space();
        bool numeric = false;
        atom.args.push_back(term(numeric));
        atom.numeric.push_back(numeric);
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (pos_ < text_.size() && text_[pos_] == ')') {
          ++pos_;
          break;
        }
        throw AnswerSetError("malformed atom '" + atom.name + "'");
      }
    }
    return atom;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) {
      throw AnswerSetError(std::string("unexpected character '") + text_[pos_] + "' in answer set");
    }
    return std::string(text_.substr(start, pos_ - start));
  }
  std::string term(bool& numeric) {
    if (pos_ >= text_.size()) throw AnswerSetError("unexpected end of answer set");
    const char c = text_[pos_];
    if (c == '"') {
      ++pos_;
      std::string value;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        char d = text_[pos_++];
        if (d == '\\' && pos_ < text_.size()) {
          d = text_[pos_++];
          if (d == 'n') d = '\n';
        }
        value += d;
      }
      if (pos_ >= text_.size()) throw AnswerSetError("unterminated string in answer set");
      ++pos_;
      return value;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_++;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      numeric = true;
      std::string digits(text_.substr(start, pos_ - start));
      if (digits == "-") throw AnswerSetError("malformed number in answer set");
      return digits;
    }
    if (c == '(') throw AnswerSetError("tuple terms are not supported in answer sets");
    std::string id = identifier();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      throw AnswerSetError("nested function term '" + id + "' in answer set");
    }
    return id;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Time to_time(const std::string& digits) {
  Time value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw AnswerSetError("number out of range: " + digits);
  }
  return value;
}

/// Atoms of the last "Answer:" block, or the whole text if there is none.
std::string last_answer(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  std::optional<std::size_t> answer;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].starts_with("Answer:")) answer = i;
  }
  if (!answer) {
    std::string atoms;
    for (const auto& l : lines) {
      if (l.starts_with("UNSATISFIABLE")) throw AnswerSetError("no answer set (UNSATISFIABLE)");
      atoms += l;
      atoms += '\n';
    }
    return atoms;
  }
  // The atoms follow on the next line (clingo, dlv style).
  return *answer + 1 < lines.size() ? lines[*answer + 1] : std::string{};
}

}  // namespace

AnswerSetReport parse_answer_set(std::string_view text) {
  const std::string atoms_text = last_answer(text);
  AtomReader reader(atoms_text);

  struct Partial {
    std::optional<Bit> v[2];
    std::optional<Time> t[2];
  };
  std::map<std::string, Partial> seen;
  AnswerSetReport report;
  bool any = false;

  while (auto atom = reader.next()) {
    any = true;
    const bool is_v = atom->name == "v" && atom->args.size() == 3;
    const bool is_t = atom->name == "t" && atom->args.size() == 3;
    if (is_v || is_t) {
      if (!atom->numeric[1] || !atom->numeric[2]) {
        throw AnswerSetError("non-numeric argument in " + atom->name + "/3 atom");
      }
      const Time vec = to_time(atom->args[1]);
      if (vec != 1 && vec != 2) throw AnswerSetError("vector index must be 1 or 2");
      const Time value = to_time(atom->args[2]);
      Partial& p = seen[atom->args[0]];
      const std::size_t k = static_cast<std::size_t>(vec - 1);
      if (is_v) {
        if (value != 0 && value != 1) throw AnswerSetError("logic value must be 0 or 1");
        if (p.v[k]) {
          throw AnswerSetError("duplicate v(" + atom->args[0] + "," + atom->args[1] + ",_) atom");
        }
        p.v[k] = static_cast<Bit>(value);
      } else {
        if (p.t[k]) {
          throw AnswerSetError("duplicate t(" + atom->args[0] + "," + atom->args[1] + ",_) atom");
        }
        p.t[k] = value;
      }
    } else if (atom->name == "max_output_delay" && atom->args.size() == 1) {
      if (report.objective) throw AnswerSetError("duplicate max_output_delay atom");
      report.objective = to_time(atom->args[0]);
    } else if (atom->name == "maxtime" && atom->args.size() == 1) {
      report.horizon = to_time(atom->args[0]);
    }
  }
  if (!any || seen.empty()) throw AnswerSetError("no answer set");

  for (const auto& [name, p] : seen) {
    if (!p.v[0] || !p.v[1] || !p.t[0] || !p.t[1]) {
      throw AnswerSetError("incomplete v/t atoms for signal '" + name + "'");
    }
    report.states[name] = SignalState{*p.v[0], *p.v[1], *p.t[0], *p.t[1]};
  }
  return report;
}

}  // namespace hazmax
