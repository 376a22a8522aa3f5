#include "hazmax/report.hpp"

#include <algorithm>
#include <sstream>

namespace hazmax {

namespace {

Level level_of(Bit v) { return v ? Level::High : Level::Low; }

void push(std::vector<Segment>& segments, Time start, Time end, Level level) {
  if (end < start) return;
  if (end == start && level != Level::Undetermined) return;
  if (!segments.empty() && segments.back().level == level && segments.back().end == start &&
      level != Level::Undetermined) {
    segments.back().end = end;
    return;
  }
  segments.push_back({start, end, level});
}

std::vector<SignalIndex> row_order(const Circuit& circuit) {
  std::vector<SignalIndex> order(circuit.pis().begin(), circuit.pis().end());
  order.insert(order.end(), circuit.topo().begin(), circuit.topo().end());
  return order;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_text(const std::vector<WaveRow>& rows, Time horizon) {
  std::size_t width = 4;
  for (const auto& row : rows) width = std::max(width, row.signal.size());
  std::ostringstream out;
  out << std::string(width, ' ') << ' ';
  for (Time tau = 0; tau < horizon; ++tau) out << static_cast<char>('0' + tau % 10);
  out << '\n';
  for (const auto& row : rows) {
    out << row.signal << std::string(width - row.signal.size(), ' ') << ' ';
    for (Time tau = 0; tau < horizon; ++tau) {
      const char* glyph = " ";
      for (const Segment& s : row.segments) {
        if (s.level == Level::Undetermined) {
          if (s.start <= tau && tau < s.end) {
            glyph = "#";
            break;
          }
        } else if (s.start <= tau && tau < s.end) {
          glyph = s.level == Level::High ? "‾" : "_";
        }
      }
      out << glyph;
    }
    out << '\n';
  }
  return out.str();
}

std::string render_svg(const std::vector<WaveRow>& rows, Time horizon) {
  constexpr int kLabel = 80;
  constexpr int kUnit = 24;
  constexpr int kRow = 32;
  constexpr int kTop = 24;
  constexpr int kHigh = 6;
  constexpr int kLow = 24;
  const int width = kLabel + horizon * kUnit + 16;
  const int height = kTop + static_cast<int>(rows.size()) * kRow + 8;
  auto x = [&](Time t) { return kLabel + t * kUnit; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" style=\"fill:#ffffff\"/>\n";
  out << "<g style=\"font-family:monospace;font-size:11px;fill:#555555\">\n";
  for (Time tau = 0; tau <= horizon; ++tau) {
    out << "<line x1=\"" << x(tau) << "\" y1=\"" << kTop - 6 << "\" x2=\"" << x(tau) << "\" y2=\""
        << height - 8 << "\" style=\"stroke:#e0e0e0;stroke-width:1\"/>\n";
    out << "<text x=\"" << x(tau) << "\" y=\"" << kTop - 10
        << "\" style=\"text-anchor:middle\">" << tau << "</text>\n";
  }
  out << "</g>\n";

  for (std::size_t r = 0; r < rows.size(); ++r) {
    const WaveRow& row = rows[r];
    const int base = kTop + static_cast<int>(r) * kRow;
    out << "<g>\n";
    out << "<text x=\"4\" y=\"" << base + kLow - 4
        << "\" style=\"font-family:monospace;font-size:13px;fill:#000000\">"
        << xml_escape(row.signal) << "</text>\n";
    for (const Segment& s : row.segments) {
      if (s.level != Level::Undetermined) continue;
      const int w = std::max(2, (s.end - s.start) * kUnit);
      out << "<rect x=\"" << x(s.start) - (s.end == s.start ? 1 : 0) << "\" y=\"" << base + kHigh
          << "\" width=\"" << w << "\" height=\"" << kLow - kHigh
          << "\" style=\"fill:#9e9e9e;fill-opacity:0.6;stroke:#616161;stroke-width:1\"/>\n";
    }
    // Stable levels, joined by vertical edges where they touch.
    std::ostringstream path;
    bool open = false;
    int last_y = 0;
    for (const Segment& s : row.segments) {
      if (s.level == Level::Undetermined) {
        if (s.end > s.start) open = false;
        continue;
      }
      const int y = base + (s.level == Level::High ? kHigh : kLow);
      if (open) {
        if (y != last_y) path << " L" << x(s.start) << ' ' << y;
      } else {
        path << (path.tellp() > 0 ? " M" : "M") << x(s.start) << ' ' << y;
      }
      path << " L" << x(s.end) << ' ' << y;
      open = true;
      last_y = y;
    }
    if (path.tellp() > 0) {
      out << "<path d=\"" << path.str()
          << "\" style=\"fill:none;stroke:#1565c0;stroke-width:2\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::vector<WaveRow> rows_from_model(const Circuit& circuit, const AnalysisResult& result) {
  const Time horizon = result.horizon;
  std::vector<WaveRow> rows;
  for (SignalIndex s : row_order(circuit)) {
    const SignalState& st = result.states[s];
    WaveRow row{circuit.name(s), {}};
    if (st.steady(horizon) || (st.v1 == st.v2 && st.t2 < st.t1)) {
      push(row.segments, 0, horizon, level_of(st.v2));
    } else {
      const Time a = std::clamp<Time>(st.t1, 0, horizon);
      const Time b = std::clamp<Time>(st.t2, a, horizon);
      push(row.segments, 0, a, level_of(st.v1));
      if (b > a || st.v1 != st.v2) push(row.segments, a, b, Level::Undetermined);
      push(row.segments, b, horizon, level_of(st.v2));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<WaveRow> rows_from_simulation(const Circuit& circuit,
                                          const std::vector<Waveform>& waveforms, Time horizon) {
  std::vector<WaveRow> rows;
  for (SignalIndex s : row_order(circuit)) {
    const Waveform& w = waveforms[s];
    WaveRow row{circuit.name(s), {}};
    Time from = 0;
    Bit level = w.initial;
    for (const Event& e : w.events) {
      push(row.segments, from, e.time, level_of(level));
      from = e.time;
      level = e.value;
    }
    push(row.segments, from, std::max(horizon, from + 1), level_of(level));
    rows.push_back(std::move(row));
  }
  return rows;
}

RenderFormat parse_render_format(std::string_view token) {
  if (token == "text") return RenderFormat::Text;
  if (token == "svg") return RenderFormat::Svg;
  throw FormatError("unsupported render format '" + std::string(token) + "' (expected text or svg)");
}

std::string render(const std::vector<WaveRow>& rows, Time horizon, RenderFormat format) {
  return format == RenderFormat::Text ? render_text(rows, horizon) : render_svg(rows, horizon);
}

}  // namespace hazmax
