// Export of circuits as gate facts plus the two ASP encodings of the timing
// model, and parsing of solver answer sets for cross-validation.

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hazmax/netlist.hpp"
#include "hazmax/timing_model.hpp"

namespace hazmax {

enum class EncodingVariant { Basic, Advanced };

std::string_view to_string(EncodingVariant variant);

struct AspProgram {
  EncodingVariant variant;
  std::string text;
};

/// Signal name as an ASP term: plain constants pass through, anything else
/// (upper-case or digit first, punctuation, the keyword `not`) becomes a
/// quoted string.
std::string asp_term(std::string_view name);

/// gate_delay/3 and gate_in/3 facts, gates ordered by output name and
/// inputs by name, one fact per line. Empty for a circuit without gates.
std::string emit_facts(const Circuit& circuit);

/// Facts followed by the shared signal, value, timing and optimization
/// rules and the variant's switching-window rules.
AspProgram emit_program(const Circuit& circuit, EncodingVariant variant);

class AnswerSetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AnswerSetReport {
  std::map<std::string, SignalState> states;
  std::optional<Time> objective;  // max_output_delay/1
  std::optional<Time> horizon;    // maxtime/1
};

/// Reads the last answer set printed by a solver (or bare atoms). Throws
/// AnswerSetError when no answer set is present, when a v/3 or t/3 atom is
/// duplicated or missing for a signal, or on malformed terms.
AnswerSetReport parse_answer_set(std::string_view text);

}  // namespace hazmax
