// Hazard-aware two-vector timing model.
//
// Every signal carries <v1, v2, t1, t2>: its settled value under the first
// and second input vector, the earliest time it may leave v1 and the latest
// time by which it is stable at v2. A signal that provably never moves is
// encoded with t1 = T and t2 = -1, where T is the circuit horizon.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hazmax/netlist.hpp"

namespace hazmax {

struct SignalState {
  Bit v1 = 0;
  Bit v2 = 0;
  Time t1 = 0;
  Time t2 = 0;

  bool steady(Time horizon) const { return t1 == horizon && t2 == -1; }
  friend bool operator==(const SignalState&, const SignalState&) = default;
};

/// Gate switching window before the gate's own delay is added.
struct StarTimes {
  Time early;
  Time late;
  friend bool operator==(const StarTimes&, const StarTimes&) = default;
};

struct FinalTimes {
  Time t1;
  Time t2;
  bool masked;  // potential hazard that cannot appear
  friend bool operator==(const FinalTimes&, const FinalTimes&) = default;
};

/// Two input vectors, each indexed like Circuit::pis().
struct VectorPair {
  std::vector<Bit> first;
  std::vector<Bit> second;
  friend bool operator==(const VectorPair&, const VectorPair&) = default;
  friend auto operator<=>(const VectorPair&, const VectorPair&) = default;
};

/// "0110" style rendering, one character per PI in pis() order.
std::string format_vector(std::span<const Bit> bits);
std::vector<Bit> parse_vector(std::string_view bits, std::size_t width);
/// Accepts "<bits>-><bits>"; throws std::invalid_argument on malformed input
/// or when a vector's width differs from the PI count.
VectorPair parse_pair(const Circuit& circuit, std::string_view text);
std::string format_pair(const VectorPair& pair);

/// Boolean function of the gate. Throws std::invalid_argument on arity
/// mismatch.
Bit gate_value(GateKind kind, std::span<const Bit> inputs);

/// Pre-delay switching window from the input states.
///
/// Gates with a controlling value c: under the first vector the window opens
/// at the earliest input time when no input sits at c, else at the latest
/// time among inputs at c. Under the second vector it closes at the latest
/// input time when no input sits at c, else at the earliest time among
/// inputs at c. XOR/XNOR use min/max over all inputs; INV/BUFF pass through.
/// The steady sentinels T and -1 take part as plain numbers.
StarTimes star_times(GateKind kind, std::span<const SignalState> inputs);

/// True when the output value does not change and the window is empty.
bool hazard_masked(Bit v1, Bit v2, StarTimes star);

FinalTimes finalize_times(Bit v1, Bit v2, StarTimes star, Time delay, Time horizon);

struct AnalysisResult {
  VectorPair pair;
  std::vector<SignalState> states;  // indexed by signal
  Time horizon = 0;
  Time max_late = -1;
};

/// One topological pass. PIs get (V1, V2, 0, 0).
AnalysisResult analyze_pair(const Circuit& circuit, const VectorPair& pair, Time horizon);
AnalysisResult analyze_pair(const Circuit& circuit, const VectorPair& pair);

/// Max t2 over the POs; -1 when every PO is steady.
Time max_late_output(const Circuit& circuit, const AnalysisResult& result);

/// Reusable allocation-free evaluator for the search loops.
class PairEvaluator {
 public:
  PairEvaluator(const Circuit& circuit, Time horizon);

  /// Loads the value of every signal under vector `which` (1 or 2).
  void load_vector(int which, std::span<const Bit> bits);
  /// Computes all times from the loaded values; returns max PO t2.
  Time propagate();

  Time evaluate(std::span<const Bit> first, std::span<const Bit> second) {
    load_vector(1, first);
    load_vector(2, second);
    return propagate();
  }

  const std::vector<SignalState>& states() const { return states_; }
  Time horizon() const { return horizon_; }

 private:
  const Circuit& circuit_;
  Time horizon_;
  std::vector<SignalState> states_;
};

}  // namespace hazmax
