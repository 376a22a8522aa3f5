// Shared gate rules, parameterised over how input states are fetched so the
// evaluators can read straight from their own storage.

#pragma once

#include <algorithm>
#include <cstddef>

#include "hazmax/netlist.hpp"
#include "hazmax/timing_model.hpp"

namespace hazmax::detail {

constexpr bool inverting(GateKind kind) {
  return kind == GateKind::Nand || kind == GateKind::Nor || kind == GateKind::Xnor ||
         kind == GateKind::Inv;
}

/// Output of a controlling-value gate when some input is at the controlling
/// value c.
constexpr Bit controlled_output(GateKind kind, Bit c) {
  return static_cast<Bit>(c ^ (inverting(kind) ? 1 : 0));
}

template <class BitAt>
Bit gate_value_by(GateKind kind, std::size_t n, BitAt&& bit_at) {
  switch (kind) {
    case GateKind::Inv: return static_cast<Bit>(bit_at(0) ^ 1);
    case GateKind::Buff: return bit_at(0);
    case GateKind::Xor:
    case GateKind::Xnor: {
      Bit acc = inverting(kind) ? 1 : 0;
      for (std::size_t i = 0; i < n; ++i) acc ^= bit_at(i);
      return acc;
    }
    default: {
      const Bit c = kind == GateKind::And || kind == GateKind::Nand ? 0 : 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (bit_at(i) == c) return controlled_output(kind, c);
      }
      return static_cast<Bit>(controlled_output(kind, c) ^ 1);
    }
  }
}

template <class StateAt>
StarTimes star_times_by(GateKind kind, std::size_t n, StateAt&& state_at) {
  if (kind == GateKind::Inv || kind == GateKind::Buff) {
    const SignalState& s = state_at(0);
    return {s.t1, s.t2};
  }
  if (kind == GateKind::Xor || kind == GateKind::Xnor) {
    StarTimes st{state_at(0).t1, state_at(0).t2};
    for (std::size_t i = 1; i < n; ++i) {
      st.early = std::min(st.early, state_at(i).t1);
      st.late = std::max(st.late, state_at(i).t2);
    }
    return st;
  }
  const Bit c = kind == GateKind::And || kind == GateKind::Nand ? 0 : 1;
  bool ctrl1 = false;
  bool ctrl2 = false;
  Time min_t1 = 0, max_t1_ctrl = 0, max_t2 = 0, min_t2_ctrl = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const SignalState& s = state_at(i);
    if (i == 0) {
      min_t1 = s.t1;
      max_t2 = s.t2;
    } else {
      min_t1 = std::min(min_t1, s.t1);
      max_t2 = std::max(max_t2, s.t2);
    }
    if (s.v1 == c) {
      max_t1_ctrl = ctrl1 ? std::max(max_t1_ctrl, s.t1) : s.t1;
      ctrl1 = true;
    }
    if (s.v2 == c) {
      min_t2_ctrl = ctrl2 ? std::min(min_t2_ctrl, s.t2) : s.t2;
      ctrl2 = true;
    }
  }
  return {ctrl1 ? max_t1_ctrl : min_t1, ctrl2 ? min_t2_ctrl : max_t2};
}

inline FinalTimes finalize(Bit v1, Bit v2, StarTimes star, Time delay, Time horizon) {
  const bool masked = v1 == v2 && star.late - star.early <= 0;
  FinalTimes out{horizon, -1, masked};
  if (!masked && star.early != horizon) out.t1 = star.early + delay;
  if (!masked && star.late != -1) out.t2 = star.late + delay;
  return out;
}

}  // namespace hazmax::detail
