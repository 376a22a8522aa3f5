// Waveform diagrams for model and simulation results, as fixed-width text
// or standalone SVG.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hazmax/netlist.hpp"
#include "hazmax/simulator.hpp"
#include "hazmax/timing_model.hpp"

namespace hazmax {

enum class Level { Low, High, Undetermined };

/// [start, end) for stable levels. An undetermined segment covers the closed
/// window [start, end]: the value is unknown from start up to the instant end
/// at which the final level is reached. A zero-width undetermined segment
/// marks an exact transition.
struct Segment {
  Time start;
  Time end;
  Level level;
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct WaveRow {
  std::string signal;
  std::vector<Segment> segments;  // tile [0, horizon] in order
};

/// PIs first (in pis() order), then gates in topological order.
std::vector<WaveRow> rows_from_model(const Circuit& circuit, const AnalysisResult& result);

/// Exact levels from simulator events; rows extend to `horizon`, or past it
/// if a signal still switches later.
std::vector<WaveRow> rows_from_simulation(const Circuit& circuit,
                                          const std::vector<Waveform>& waveforms, Time horizon);

enum class RenderFormat { Text, Svg };

class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

RenderFormat parse_render_format(std::string_view token);

/// Text: a time axis line, then one line per row, one character per unit
/// column [tau, tau + 1) for tau in [0, horizon): '_' low, '‾' high, '#'
/// when any part of the column is undetermined.
/// Svg: stepped traces with shaded undetermined rectangles, inline styles.
std::string render(const std::vector<WaveRow>& rows, Time horizon, RenderFormat format);

}  // namespace hazmax
