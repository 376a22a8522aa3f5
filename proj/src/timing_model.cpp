#include "hazmax/timing_model.hpp"

#include <algorithm>
#include <stdexcept>

#include "hazmax/sta.hpp"
#include "timing_rules.hpp"

namespace hazmax {

namespace {

void check_arity(GateKind kind, std::size_t n) {
  const Arity a = arity(kind);
  if (n < a.min || n > a.max) {
    throw std::invalid_argument(std::string(bench_keyword(kind)) + " gate given " +
                                std::to_string(n) + " input(s)");
  }
}

}  // namespace

std::string format_vector(std::span<const Bit> bits) {
  std::string out;
  out.reserve(bits.size());
  for (Bit b : bits) out += b ? '1' : '0';
  return out;
}

std::vector<Bit> parse_vector(std::string_view bits, std::size_t width) {
  if (bits.size() != width) {
    throw std::invalid_argument("vector '" + std::string(bits) + "' has " +
                                std::to_string(bits.size()) + " bits, circuit has " +
                                std::to_string(width) + " primary inputs");
  }
  std::vector<Bit> out;
  out.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("vector '" + std::string(bits) + "' must contain only 0 and 1");
    }
    out.push_back(c == '1' ? 1 : 0);
  }
  return out;
}

VectorPair parse_pair(const Circuit& circuit, std::string_view text) {
  const auto arrow = text.find("->");
  if (arrow == std::string_view::npos) {
    throw std::invalid_argument("pair must look like <bits>-><bits>, got '" + std::string(text) + "'");
  }
  const std::size_t width = circuit.pis().size();
  return {parse_vector(text.substr(0, arrow), width), parse_vector(text.substr(arrow + 2), width)};
}

std::string format_pair(const VectorPair& pair) {
  return format_vector(pair.first) + "->" + format_vector(pair.second);
}

Bit gate_value(GateKind kind, std::span<const Bit> inputs) {
  check_arity(kind, inputs.size());
  return detail::gate_value_by(kind, inputs.size(), [&](std::size_t i) { return inputs[i]; });
}

StarTimes star_times(GateKind kind, std::span<const SignalState> inputs) {
  check_arity(kind, inputs.size());
  return detail::star_times_by(kind, inputs.size(),
                               [&](std::size_t i) -> const SignalState& { return inputs[i]; });
}

bool hazard_masked(Bit v1, Bit v2, StarTimes star) {
  return v1 == v2 && star.late - star.early <= 0;
}

FinalTimes finalize_times(Bit v1, Bit v2, StarTimes star, Time delay, Time horizon) {
  return detail::finalize(v1, v2, star, delay, horizon);
}

PairEvaluator::PairEvaluator(const Circuit& circuit, Time horizon)
    : circuit_(circuit), horizon_(horizon), states_(circuit.signal_count()) {
  if (!circuit.delays_assigned()) {
    throw std::invalid_argument("circuit has gates without an assigned delay");
  }
}

void PairEvaluator::load_vector(int which, std::span<const Bit> bits) {
  const auto pis = circuit_.pis();
  if (bits.size() != pis.size()) {
    throw std::invalid_argument("input vector width does not match the primary inputs");
  }
  const bool first = which == 1;
  for (std::size_t i = 0; i < pis.size(); ++i) {
    (first ? states_[pis[i]].v1 : states_[pis[i]].v2) = bits[i];
  }
  for (SignalIndex s : circuit_.topo()) {
    const auto& gate = circuit_.gate(s);
    const Bit v = detail::gate_value_by(gate.kind, gate.inputs.size(), [&](std::size_t i) {
      const SignalState& in = states_[gate.inputs[i]];
      return first ? in.v1 : in.v2;
    });
    (first ? states_[s].v1 : states_[s].v2) = v;
  }
}

Time PairEvaluator::propagate() {
  for (SignalIndex pi : circuit_.pis()) {
    states_[pi].t1 = 0;
    states_[pi].t2 = 0;
  }
  for (SignalIndex s : circuit_.topo()) {
    const auto& gate = circuit_.gate(s);
    const StarTimes star =
        detail::star_times_by(gate.kind, gate.inputs.size(),
                              [&](std::size_t i) -> const SignalState& { return states_[gate.inputs[i]]; });
    SignalState& out = states_[s];
    const FinalTimes fin = detail::finalize(out.v1, out.v2, star, gate.delay, horizon_);
    out.t1 = fin.t1;
    out.t2 = fin.t2;
  }
  Time latest = -1;
  for (SignalIndex po : circuit_.pos()) latest = std::max(latest, states_[po].t2);
  return latest;
}

AnalysisResult analyze_pair(const Circuit& circuit, const VectorPair& pair, Time horizon) {
  PairEvaluator eval(circuit, horizon);
  AnalysisResult result;
  result.max_late = eval.evaluate(pair.first, pair.second);
  result.pair = pair;
  result.states = eval.states();
  result.horizon = horizon;
  return result;
}

AnalysisResult analyze_pair(const Circuit& circuit, const VectorPair& pair) {
  return analyze_pair(circuit, pair, hazmax::horizon(circuit));
}

Time max_late_output(const Circuit& circuit, const AnalysisResult& result) {
  Time latest = -1;
  for (SignalIndex po : circuit.pos()) latest = std::max(latest, result.states[po].t2);
  return latest;
}

}  // namespace hazmax
