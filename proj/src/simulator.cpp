#include "hazmax/simulator.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "timing_rules.hpp"

namespace hazmax {

Bit Waveform::value_at(Time time) const {
  Bit v = initial;
  for (const Event& e : events) {
    if (e.time > time) break;
    v = e.value;
  }
  return v;
}

std::vector<Bit> settle(const Circuit& circuit, std::span<const Bit> vector) {
  const auto pis = circuit.pis();
  if (vector.size() != pis.size()) {
    throw std::invalid_argument("input vector width does not match the primary inputs");
  }
  std::vector<Bit> values(circuit.signal_count(), 0);
  for (std::size_t i = 0; i < pis.size(); ++i) values[pis[i]] = vector[i];
  for (SignalIndex s : circuit.topo()) {
    const auto& gate = circuit.gate(s);
    values[s] = detail::gate_value_by(gate.kind, gate.inputs.size(),
                                      [&](std::size_t i) { return values[gate.inputs[i]]; });
  }
  return values;
}

std::vector<Waveform> simulate_pair(const Circuit& circuit, const VectorPair& pair) {
  if (!circuit.delays_assigned()) {
    throw std::invalid_argument("circuit has gates without an assigned delay");
  }
  std::vector<Bit> current = settle(circuit, pair.first);
  // Value each signal will hold once its pending events have matured.
  std::vector<Bit> projected = current;

  std::vector<Waveform> waves(circuit.signal_count());
  for (SignalIndex s = 0; s < circuit.signal_count(); ++s) {
    waves[s].signal = s;
    waves[s].initial = current[s];
  }

  // time -> (signal -> value); ordered by (time, signal) for determinism.
  std::map<Time, std::map<SignalIndex, Bit>> queue;
  const auto pis = circuit.pis();
  for (std::size_t i = 0; i < pis.size(); ++i) {
    if (pair.second[i] != current[pis[i]]) {
      queue[0][pis[i]] = pair.second[i];
      projected[pis[i]] = pair.second[i];
    }
  }

  std::set<SignalIndex> touched;
  while (!queue.empty()) {
    auto node = queue.begin();
    const Time now = node->first;
    const std::map<SignalIndex, Bit> batch = std::move(node->second);
    queue.erase(node);

    touched.clear();
    for (const auto& [s, v] : batch) {
      if (current[s] == v) continue;
      current[s] = v;
      waves[s].events.push_back({now, s, v});
      for (SignalIndex reader : circuit.readers(s)) touched.insert(reader);
    }
    for (SignalIndex g : touched) {
      const auto& gate = circuit.gate(g);
      const Bit v = detail::gate_value_by(gate.kind, gate.inputs.size(),
                                          [&](std::size_t i) { return current[gate.inputs[i]]; });
      if (v == projected[g]) continue;
      projected[g] = v;
      queue[now + gate.delay][g] = v;
    }
  }
  return waves;
}

SimMetrics metrics(const Circuit& circuit, const std::vector<Waveform>& waveforms) {
  SimMetrics m;
  m.per_signal.resize(waveforms.size());
  for (std::size_t s = 0; s < waveforms.size(); ++s) {
    const Waveform& w = waveforms[s];
    m.per_signal[s] = {w.first_change(), w.stabilization(), w.events.size()};
  }
  for (SignalIndex po : circuit.pos()) {
    m.max_stabilization = std::max(m.max_stabilization, m.per_signal[po].stabilization);
  }
  return m;
}

}  // namespace hazmax
