// Static timing analysis: longest-path arrival times and the horizon T.

#pragma once

#include <vector>

#include "hazmax/netlist.hpp"

namespace hazmax {

/// arrival[s] = 0 for PIs, max over inputs of arrival + delay for gates.
/// Indexed by signal.
struct ArrivalMap {
  std::vector<Time> arrival;

  Time operator[](SignalIndex s) const { return arrival[s]; }
};

ArrivalMap sta_arrivals(const Circuit& circuit);

/// T = 1 + max PO arrival; strictly greater than any stabilization time the
/// timing model can produce for this circuit.
Time horizon(const Circuit& circuit);
Time horizon(const Circuit& circuit, const ArrivalMap& arrivals);

}  // namespace hazmax
