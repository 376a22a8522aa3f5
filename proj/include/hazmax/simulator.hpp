// Event-driven, pure transport-delay gate simulation of a vector switch.
// Serves as ground truth for the timing model.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hazmax/netlist.hpp"
#include "hazmax/timing_model.hpp"

namespace hazmax {

struct Event {
  Time time;
  SignalIndex signal;
  Bit value;
  friend bool operator==(const Event&, const Event&) = default;
};

struct Waveform {
  SignalIndex signal = 0;
  Bit initial = 0;  // settled value under the first vector
  std::vector<Event> events;

  Bit final_value() const { return events.empty() ? initial : events.back().value; }
  /// Time of the first event, -1 when there is none.
  Time first_change() const { return events.empty() ? -1 : events.front().time; }
  /// Time of the last event, -1 when there is none.
  Time stabilization() const { return events.empty() ? -1 : events.back().time; }
  /// Level held during [time, time + 1).
  Bit value_at(Time time) const;
};

/// Boolean value of every signal for one input vector (indexed by signal).
std::vector<Bit> settle(const Circuit& circuit, std::span<const Bit> vector);

/// At time 0 the PIs step from the first to the second vector. A gate whose
/// inputs change at time t is evaluated once with all changes at t applied
/// and, if the result differs from the value its output is already headed
/// for, schedules that result at t + delay. No pulse is ever filtered.
/// Returns one waveform per signal, indexed by signal.
std::vector<Waveform> simulate_pair(const Circuit& circuit, const VectorPair& pair);

struct SignalMetrics {
  Time first_change = -1;
  Time stabilization = -1;
  std::size_t transitions = 0;
};

struct SimMetrics {
  std::vector<SignalMetrics> per_signal;  // indexed by signal
  Time max_stabilization = -1;            // over POs
};

SimMetrics metrics(const Circuit& circuit, const std::vector<Waveform>& waveforms);

}  // namespace hazmax
