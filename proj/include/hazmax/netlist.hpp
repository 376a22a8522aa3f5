// Gate-level netlists: parsing (.bench and gate fact format), validation,
// delay assignment and the immutable indexed Circuit used by every analysis.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace hazmax {

using Bit = std::uint8_t;
using Time = std::int32_t;
using SignalIndex = std::uint32_t;

enum class GateKind : std::uint8_t { And, Nand, Or, Nor, Xor, Xnor, Inv, Buff };

/// Upper-case mnemonic used in .bench files ("NAND").
std::string_view bench_keyword(GateKind kind);
/// Lower-case atom used in gate facts ("nand").
std::string_view fact_atom(GateKind kind);
/// Case-insensitive; accepts the NOT/BUF spellings as aliases of INV/BUFF.
std::optional<GateKind> gate_kind_from_keyword(std::string_view keyword);
/// Exact lower-case fact atom only.
std::optional<GateKind> gate_kind_from_atom(std::string_view atom);

/// Controlling value of AND/NAND (0) and OR/NOR (1); none for the others.
std::optional<Bit> controlling_value(GateKind kind);

struct Arity {
  std::size_t min;
  std::size_t max;  // SIZE_MAX when unbounded
};
Arity arity(GateKind kind);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A gate as written in the source, before indexing.
struct Gate {
  std::string output;
  GateKind kind;
  std::vector<std::string> inputs;
  Time delay = 0;
};

/// Raw parse result. Nothing is checked beyond syntax; see validate().
struct Netlist {
  std::vector<Gate> gates;
  std::vector<std::string> declared_inputs;
  std::vector<std::string> declared_outputs;
  // .bench files declare their inputs; the fact format infers them.
  bool explicit_io = false;
};

enum class ViolationKind {
  Cycle,
  MultipleDrivers,
  Arity,
  DuplicateInput,
  Undriven,
  Dangling,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string signal;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;
  // Gate outputs in a valid evaluation order; empty when a cycle exists.
  std::vector<std::string> topo_order;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  std::string summary() const;
};

ValidationReport validate(const Netlist& netlist);

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Immutable, indexed, validated combinational circuit.
///
/// Signals are indexed in lexicographic order of their names, so pis() is
/// already sorted by name. PIs are the signals that no gate drives and POs
/// are the signals that no gate reads.
class Circuit {
 public:
  struct Node {
    GateKind kind;
    std::vector<SignalIndex> inputs;
    Time delay;
  };

  /// Throws ValidationError when validate(netlist) reports violations.
  static Circuit from_netlist(const Netlist& netlist);

  std::size_t signal_count() const { return names_.size(); }
  std::size_t gate_count() const { return topo_.size(); }
  const std::string& name(SignalIndex s) const { return names_[s]; }
  std::optional<SignalIndex> find(std::string_view name) const;
  /// Throws std::out_of_range for unknown names.
  SignalIndex index_of(std::string_view name) const;

  bool is_pi(SignalIndex s) const { return !nodes_[s].has_value(); }
  bool is_po(SignalIndex s) const { return readers_[s].empty(); }
  const Node& gate(SignalIndex s) const { return *nodes_[s]; }

  std::span<const SignalIndex> pis() const { return pis_; }
  std::span<const SignalIndex> pos() const { return pos_; }
  /// Gate outputs, each after the drivers of all its inputs.
  std::span<const SignalIndex> topo() const { return topo_; }
  /// Distinct gates that read signal s.
  std::span<const SignalIndex> readers(SignalIndex s) const { return readers_[s]; }
  /// Number of gate input pins driven by s.
  std::size_t fanout(SignalIndex s) const { return fanout_[s]; }
  /// Position of a PI inside pis(); only meaningful for PIs.
  std::size_t pi_position(SignalIndex s) const { return pi_position_[s]; }

  /// True when every gate has delay >= 1.
  bool delays_assigned() const;

  /// Copy with new per-gate delays; `delays` is indexed by signal, entries
  /// for PIs are ignored.
  Circuit with_delays(std::span<const Time> delays) const;

  Netlist to_netlist() const;
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  Circuit() = default;

  std::vector<std::string> names_;
  std::unordered_map<std::string, SignalIndex> index_;
  std::vector<std::optional<Node>> nodes_;
  std::vector<SignalIndex> pis_;
  std::vector<SignalIndex> pos_;
  std::vector<SignalIndex> topo_;
  std::vector<std::vector<SignalIndex>> readers_;
  std::vector<std::size_t> fanout_;
  std::vector<std::size_t> pi_position_;
  std::vector<std::string> warnings_;
};

/// Syntax-level readers.
Netlist read_bench(std::string_view text);
Netlist read_native(std::string_view text);

/// read_* followed by Circuit::from_netlist. Structural problems surface as
/// ValidationError.
Circuit parse_bench(std::string_view text);
Circuit parse_native(std::string_view text);

namespace delay_model {
struct Unit {};
/// delay = max(1, scale * fanout)
struct Fanout {
  Time scale = 1;
};
/// Per-gate delays keyed by output name. Gates absent from the map keep a
/// delay they already carry; a gate with neither is an error.
struct Explicit {
  std::map<std::string, Time> delays;
};
}  // namespace delay_model

using DelayModel = std::variant<delay_model::Unit, delay_model::Fanout, delay_model::Explicit>;

/// Throws std::invalid_argument for incomplete or nonpositive explicit delays.
Circuit assign_delays(const Circuit& circuit, const DelayModel& model);

/// "unit", "fanout" or "fanout:<k>".
DelayModel parse_delay_model(std::string_view text);

/// Lines of `signal delay`, `#` comments allowed.
std::map<std::string, Time> parse_delay_file(std::string_view text);

}  // namespace hazmax
