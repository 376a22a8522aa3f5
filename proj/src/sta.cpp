#include "hazmax/sta.hpp"

#include <algorithm>

namespace hazmax {

ArrivalMap sta_arrivals(const Circuit& circuit) {
  ArrivalMap map{std::vector<Time>(circuit.signal_count(), 0)};
  for (SignalIndex s : circuit.topo()) {
    const auto& gate = circuit.gate(s);
    Time latest = 0;
    for (SignalIndex in : gate.inputs) latest = std::max(latest, map.arrival[in]);
    map.arrival[s] = latest + gate.delay;
  }
  return map;
}

Time horizon(const Circuit& circuit, const ArrivalMap& arrivals) {
  Time latest = 0;
  for (SignalIndex po : circuit.pos()) latest = std::max(latest, arrivals[po]);
  return latest + 1;
}

Time horizon(const Circuit& circuit) { return horizon(circuit, sta_arrivals(circuit)); }

}  // namespace hazmax
