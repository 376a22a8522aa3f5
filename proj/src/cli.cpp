#include "hazmax/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "hazmax/asp_export.hpp"
#include "hazmax/netlist.hpp"
#include "hazmax/report.hpp"
#include "hazmax/search.hpp"
#include "hazmax/simulator.hpp"
#include "hazmax/sta.hpp"
#include "hazmax/timing_model.hpp"

namespace hazmax::cli {

namespace {

using json = nlohmann::json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string input;
  std::string input_format;  // "", bench, native
  std::string delay;         // "", unit, fanout[:k], file=<path>
  std::string out_path;
  bool json = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("write to '" + path + "' failed");
}

bool is_bench(const Common& c) {
  if (!c.input_format.empty()) return c.input_format == "bench";
  std::string ext = std::filesystem::path(c.input).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (ext == ".bench") return true;
  if (ext == ".lp" || ext == ".facts") return false;
  throw UsageError("cannot tell the format of '" + c.input +
                   "' from its extension; pass --input-format bench|native");
}

std::optional<DelayModel> delay_model_of(const Common& c) {
  if (c.delay.empty()) return std::nullopt;
  if (c.delay.starts_with("file=")) {
    const std::string path = c.delay.substr(5);
    if (path.empty()) throw UsageError("--delay file= needs a path");
    return delay_model::Explicit{parse_delay_file(read_file(path))};
  }
  try {
    return parse_delay_model(c.delay);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Circuit load(const Common& c, std::ostream& err) {
  const bool bench = is_bench(c);
  auto model = delay_model_of(c);  // usage errors before touching the input
  const std::string text = read_file(c.input);
  Circuit circuit = bench ? parse_bench(text) : parse_native(text);
  for (const auto& w : circuit.warnings()) err << "warning: " << w << '\n';
  if (!model && bench) model = delay_model::Unit{};
  if (model) circuit = assign_delays(circuit, *model);
  return circuit;
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.out_path.empty()) {
    out << text;
  } else {
    write_file(c.out_path, text);
  }
}

void add_common(CLI::App* sub, Common& c, bool with_out = true) {
  sub->add_option("circuit", c.input, "Circuit file (.bench or gate facts)")->required();
  sub->add_option("--input-format", c.input_format, "Input format (default: from extension)")
      ->check(CLI::IsMember({"bench", "native"}));
  sub->add_option("--delay", c.delay, "Delay model: unit | fanout[:k] | file=<path>");
  if (with_out) sub->add_option("--out", c.out_path, "Write output to this file");
  sub->add_flag("--json", c.json, "Machine-readable output");
}

std::vector<SignalIndex> display_order(const Circuit& circuit) {
  std::vector<SignalIndex> order(circuit.pis().begin(), circuit.pis().end());
  order.insert(order.end(), circuit.topo().begin(), circuit.topo().end());
  return order;
}

json witness_json(const std::optional<VectorPair>& w) {
  if (!w) return nullptr;
  return json{{"v1", format_vector(w->first)}, {"v2", format_vector(w->second)}};
}

VectorPair pair_of(const Circuit& circuit, const std::string& text) {
  if (text.empty()) throw UsageError("--pair is required");
  return parse_pair(circuit, text);
}

// ---------------------------------------------------------------------------

int cmd_validate(const Common& c, std::ostream& out, std::ostream&) {
  const bool bench = is_bench(c);
  const std::string text = read_file(c.input);
  const Netlist netlist = bench ? read_bench(text) : read_native(text);
  const ValidationReport report = validate(netlist);
  if (c.json) {
    json j;
    j["ok"] = report.ok();
    j["violations"] = json::array();
    for (const auto& v : report.violations) {
      j["violations"].push_back(
          {{"kind", std::string(to_string(v.kind))}, {"signal", v.signal}, {"message", v.message}});
    }
    j["warnings"] = report.warnings;
    j["topo_order"] = report.topo_order;
    emit(c, out, j.dump(2) + "\n");
  } else {
    std::ostringstream s;
    for (const auto& v : report.violations) {
      s << "VIOLATION\t" << to_string(v.kind) << '\t' << v.signal << '\t' << v.message << '\n';
    }
    for (const auto& w : report.warnings) s << "WARNING\t" << w << '\n';
    s << (report.ok() ? "OK" : "INVALID") << '\n';
    emit(c, out, s.str());
  }
  return report.ok() ? kOk : kInputError;
}

int cmd_sta(const Common& c, std::ostream& out, std::ostream& err) {
  const Circuit circuit = load(c, err);
  const ArrivalMap arrivals = sta_arrivals(circuit);
  const Time T = horizon(circuit, arrivals);
  if (c.json) {
    json j;
    j["arrivals"] = json::object();
    for (SignalIndex s = 0; s < circuit.signal_count(); ++s) j["arrivals"][circuit.name(s)] = arrivals[s];
    j["horizon"] = T;
    emit(c, out, j.dump(2) + "\n");
  } else {
    std::ostringstream s;
    s << "signal\tarrival\n";
    for (SignalIndex i = 0; i < circuit.signal_count(); ++i) {
      s << circuit.name(i) << '\t' << arrivals[i] << '\n';
    }
    s << "HORIZON\t" << T << '\n';
    emit(c, out, s.str());
  }
  return kOk;
}

int cmd_analyze(const Common& c, const std::string& pair_text, std::ostream& out,
                std::ostream& err) {
  const Circuit circuit = load(c, err);
  const VectorPair pair = pair_of(circuit, pair_text);
  const AnalysisResult result = analyze_pair(circuit, pair);
  if (c.json) {
    json j;
    j["pair"] = format_pair(pair);
    j["horizon"] = result.horizon;
    j["max_late"] = result.max_late;
    j["signals"] = json::array();
    for (SignalIndex s : display_order(circuit)) {
      const SignalState& st = result.states[s];
      j["signals"].push_back({{"signal", circuit.name(s)},
                              {"v1", st.v1},
                              {"v2", st.v2},
                              {"t1", st.t1},
                              {"t2", st.t2}});
    }
    emit(c, out, j.dump(2) + "\n");
  } else {
    std::ostringstream s;
    s << "signal\tv1\tv2\tt1\tt2\n";
    for (SignalIndex i : display_order(circuit)) {
      const SignalState& st = result.states[i];
      s << circuit.name(i) << '\t' << int(st.v1) << '\t' << int(st.v2) << '\t' << st.t1 << '\t'
        << st.t2 << '\n';
    }
    s << "HORIZON\t" << result.horizon << '\n';
    s << "MAX_LATE\t" << result.max_late << '\n';
    emit(c, out, s.str());
  }
  return kOk;
}

int cmd_simulate(const Common& c, const std::string& pair_text, std::ostream& out,
                 std::ostream& err) {
  const Circuit circuit = load(c, err);
  const VectorPair pair = pair_of(circuit, pair_text);
  const auto waves = simulate_pair(circuit, pair);
  const SimMetrics m = metrics(circuit, waves);

  std::vector<Event> events;
  for (const auto& w : waves) events.insert(events.end(), w.events.begin(), w.events.end());
  std::sort(events.begin(), events.end(), [&](const Event& a, const Event& b) {
    if (a.time != b.time) return a.time < b.time;
    return circuit.name(a.signal) < circuit.name(b.signal);
  });

  if (c.json) {
    json j;
    j["pair"] = format_pair(pair);
    j["events"] = json::array();
    for (const Event& e : events) {
      j["events"].push_back({{"time", e.time}, {"signal", circuit.name(e.signal)}, {"value", e.value}});
    }
    j["metrics"] = json::array();
    for (SignalIndex s : display_order(circuit)) {
      const auto& sm = m.per_signal[s];
      j["metrics"].push_back({{"signal", circuit.name(s)},
                              {"first_change", sm.first_change},
                              {"stabilization", sm.stabilization},
                              {"transitions", sm.transitions}});
    }
    j["max_stabilization"] = m.max_stabilization;
    emit(c, out, j.dump(2) + "\n");
  } else {
    std::ostringstream s;
    s << "time\tsignal\tvalue\n";
    for (const Event& e : events) {
      s << e.time << '\t' << circuit.name(e.signal) << '\t' << int(e.value) << '\n';
    }
    for (SignalIndex i : display_order(circuit)) {
      const auto& sm = m.per_signal[i];
      s << "METRIC\t" << circuit.name(i) << '\t' << sm.first_change << '\t' << sm.stabilization
        << '\t' << sm.transitions << '\n';
    }
    s << "MAX_STABILIZATION\t" << m.max_stabilization << '\n';
    emit(c, out, s.str());
  }
  return kOk;
}

struct SearchFlags {
  std::string strategy = "bnb";
  unsigned jobs = 1;
  double time_limit = 0;
  std::uint64_t node_limit = 0;
  std::string branch_order = "fanout";
  std::string value_order = "zero-first";
  std::uint64_t warm_start = 5000;
  std::uint64_t seed = 1;
};

BranchBoundOptions bnb_options(const SearchFlags& f) {
  BranchBoundOptions o;
  o.jobs = std::max(1u, f.jobs);
  if (f.time_limit > 0) o.budget.time_limit = std::chrono::duration<double>(f.time_limit);
  if (f.node_limit > 0) o.budget.node_limit = f.node_limit;
  o.branch_order = f.branch_order == "name" ? BranchOrder::Name : BranchOrder::Fanout;
  o.value_order = f.value_order == "one-first" ? ValueOrder::OneFirst : ValueOrder::ZeroFirst;
  o.warm_start = f.warm_start;
  o.warm_start_seed = f.seed;
  return o;
}

int cmd_maxdelay(const Common& c, const SearchFlags& f, std::ostream& out, std::ostream& err) {
  const Circuit circuit = load(c, err);
  Optimum best;
  if (f.strategy == "exhaustive") {
    try {
      best = exhaustive_max_delay(circuit);
    } catch (const CapacityError& e) {
      throw InputError(std::string(e.what()) + "; use --strategy bnb");
    }
  } else {
    best = branch_bound_max_delay(circuit, bnb_options(f));
  }
  const bool proved = best.status == SearchStatus::ProvedOptimal;
  if (c.json) {
    json j;
    j["strategy"] = f.strategy;
    j["value"] = best.value;
    j["witness"] = witness_json(best.witness);
    j["status"] = std::string(to_string(best.status));
    j["explored"] = best.explored;
    j["leaves"] = best.leaves;
    j["upper_bound"] = best.upper_bound;
    emit(c, out, j.dump(2) + "\n");
  } else {
    std::ostringstream s;
    s << "VALUE\t" << best.value << '\n';
    if (best.witness) {
      s << "WITNESS_V1\t" << format_vector(best.witness->first) << '\n';
      s << "WITNESS_V2\t" << format_vector(best.witness->second) << '\n';
    }
    s << "STATUS\t" << to_string(best.status) << '\n';
    s << "EXPLORED\t" << best.explored << '\n';
    if (!proved) s << "UPPER_BOUND\t" << best.upper_bound << '\n';
    emit(c, out, s.str());
  }
  return proved ? kOk : kBudgetExhausted;
}

int cmd_export(const Common& c, const std::string& out_dir, std::string name,
               const std::string& variant, std::ostream& out, std::ostream& err) {
  const Circuit circuit = load(c, err);
  if (out_dir.empty()) {
    std::string text;
    if (variant == "facts") {
      text = emit_facts(circuit);
    } else {
      text = emit_program(circuit, variant == "basic" ? EncodingVariant::Basic
                                                      : EncodingVariant::Advanced)
                 .text;
    }
    if (c.json) {
      emit(c, out, json{{"variant", variant}, {"program", text}}.dump(2) + "\n");
    } else {
      emit(c, out, text);
    }
    return kOk;
  }
  if (name.empty()) name = std::filesystem::path(c.input).stem().string();
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  const std::vector<std::pair<std::string, std::string>> files = {
      {name + ".facts.lp", emit_facts(circuit)},
      {name + ".basic.lp", emit_program(circuit, EncodingVariant::Basic).text},
      {name + ".advanced.lp", emit_program(circuit, EncodingVariant::Advanced).text},
  };
  json listed = json::array();
  std::ostringstream s;
  for (const auto& [file, text] : files) {
    const std::string path = (dir / file).string();
    write_file(path, text);
    listed.push_back(path);
    s << "WROTE\t" << path << '\n';
  }
  emit(c, out, c.json ? json{{"files", listed}}.dump(2) + "\n" : s.str());
  return kOk;
}

struct CheckFlags {
  std::size_t pairs = 100;
  std::uint64_t seed = 1;
  std::string answer;
};

/// Containment of simulated waveforms in the model windows, plus t2 <= STA
/// arrival. Returns one message per violation.
std::vector<std::string> check_pair(const Circuit& circuit, const ArrivalMap& arrivals, Time T,
                                    const VectorPair& pair) {
  std::vector<std::string> problems;
  const AnalysisResult model = analyze_pair(circuit, pair, T);
  const auto waves = simulate_pair(circuit, pair);
  const std::string tag = format_pair(pair);
  for (SignalIndex s = 0; s < circuit.signal_count(); ++s) {
    const SignalState& st = model.states[s];
    const Waveform& w = waves[s];
    const std::string& n = circuit.name(s);
    if (w.initial != st.v1) problems.push_back(tag + " " + n + ": initial value differs from v1");
    if (w.final_value() != st.v2) problems.push_back(tag + " " + n + ": final value differs from v2");
    for (const Event& e : w.events) {
      if (e.time < st.t1 || e.time > st.t2) {
        problems.push_back(tag + " " + n + ": event at " + std::to_string(e.time) +
                           " outside [" + std::to_string(st.t1) + ", " + std::to_string(st.t2) + "]");
        break;
      }
    }
    if (st.t2 > arrivals[s]) {
      problems.push_back(tag + " " + n + ": t2 " + std::to_string(st.t2) + " exceeds STA arrival " +
                         std::to_string(arrivals[s]));
    }
  }
  return problems;
}

std::vector<std::string> check_answer(const Circuit& circuit, const AnswerSetReport& answer,
                                      json& summary) {
  std::vector<std::string> problems;
  VectorPair pair;
  for (SignalIndex pi : circuit.pis()) {
    auto it = answer.states.find(circuit.name(pi));
    if (it == answer.states.end()) {
      problems.push_back("answer set has no values for input '" + circuit.name(pi) + "'");
      return problems;
    }
    pair.first.push_back(it->second.v1);
    pair.second.push_back(it->second.v2);
  }
  const AnalysisResult model = analyze_pair(circuit, pair);
  for (SignalIndex s = 0; s < circuit.signal_count(); ++s) {
    auto it = answer.states.find(circuit.name(s));
    if (it == answer.states.end()) {
      problems.push_back("answer set has no atoms for '" + circuit.name(s) + "'");
      continue;
    }
    const SignalState& a = it->second;
    const SignalState& m = model.states[s];
    if (!(a == m)) {
      problems.push_back("answer set state of '" + circuit.name(s) + "' (" + std::to_string(a.v1) +
                         "," + std::to_string(a.v2) + "," + std::to_string(a.t1) + "," +
                         std::to_string(a.t2) + ") differs from the model (" +
                         std::to_string(m.v1) + "," + std::to_string(m.v2) + "," +
                         std::to_string(m.t1) + "," + std::to_string(m.t2) + ")");
    }
  }
  if (answer.horizon && *answer.horizon != model.horizon) {
    problems.push_back("answer set maxtime " + std::to_string(*answer.horizon) +
                       " differs from horizon " + std::to_string(model.horizon));
  }
  const Optimum best = branch_bound_max_delay(circuit);
  summary["witness"] = format_pair(pair);
  summary["objective"] = answer.objective ? json(*answer.objective) : json(nullptr);
  summary["native_optimum"] = best.value;
  if (!answer.objective) {
    problems.push_back("answer set has no max_output_delay atom");
  } else {
    if (*answer.objective != model.max_late) {
      problems.push_back("objective " + std::to_string(*answer.objective) +
                         " differs from the model on the witness (" +
                         std::to_string(model.max_late) + ")");
    }
    if (*answer.objective != best.value) {
      problems.push_back("objective " + std::to_string(*answer.objective) +
                         " differs from the native optimum " + std::to_string(best.value));
    }
  }
  return problems;
}

int cmd_check(const Common& c, const CheckFlags& f, std::ostream& out, std::ostream& err) {
  const Circuit circuit = load(c, err);
  const ArrivalMap arrivals = sta_arrivals(circuit);
  const Time T = horizon(circuit, arrivals);
  std::mt19937_64 rng(f.seed);
  const std::size_t n = circuit.pis().size();

  std::vector<std::string> problems;
  for (std::size_t k = 0; k < f.pairs; ++k) {
    VectorPair pair;
    for (std::size_t i = 0; i < n; ++i) pair.first.push_back(static_cast<Bit>(rng() & 1));
    for (std::size_t i = 0; i < n; ++i) pair.second.push_back(static_cast<Bit>(rng() & 1));
    auto found = check_pair(circuit, arrivals, T, pair);
    problems.insert(problems.end(), found.begin(), found.end());
  }
  json answer_summary;
  if (!f.answer.empty()) {
    AnswerSetReport answer;
    try {
      answer = parse_answer_set(read_file(f.answer));
    } catch (const AnswerSetError& e) {
      throw InputError(std::string("answer set: ") + e.what());
    }
    auto found = check_answer(circuit, answer, answer_summary);
    problems.insert(problems.end(), found.begin(), found.end());
  }

  if (c.json) {
    json j{{"pairs", f.pairs}, {"seed", f.seed}, {"violations", problems}};
    if (!f.answer.empty()) j["answer"] = answer_summary;
    emit(c, out, j.dump(2) + "\n");
  } else {
    std::ostringstream s;
    for (const auto& p : problems) s << "VIOLATION\t" << p << '\n';
    s << "CHECKED\t" << f.pairs << '\n';
    s << "VIOLATIONS\t" << problems.size() << '\n';
    emit(c, out, s.str());
  }
  return problems.empty() ? kOk : kInputError;
}

int cmd_report(const Common& c, const std::string& pair_text, const std::string& format,
               const std::string& source, std::ostream& out, std::ostream& err) {
  const RenderFormat fmt = parse_render_format(format);
  const Circuit circuit = load(c, err);
  const VectorPair pair = pair_of(circuit, pair_text);
  const AnalysisResult model = analyze_pair(circuit, pair);
  std::vector<WaveRow> rows;
  Time T = model.horizon;
  if (source == "simulation") {
    rows = rows_from_simulation(circuit, simulate_pair(circuit, pair), model.horizon);
    for (const auto& r : rows) T = std::max(T, r.segments.back().end);
  } else {
    rows = rows_from_model(circuit, model);
  }
  const std::string doc = render(rows, T, fmt);
  emit(c, out, c.json ? json{{"format", format}, {"source", source}, {"document", doc}}.dump(2) + "\n"
                      : doc);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hazard-aware worst-case delay analysis of combinational circuits", "hazmax"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  Common common;
  std::string pair_text;
  SearchFlags search;
  CheckFlags check;
  std::string out_dir, name, variant = "advanced";
  std::string render_format = "text", source = "model";

  auto* validate_cmd = app.add_subcommand("validate", "Structural checks on a netlist");
  add_common(validate_cmd, common);

  auto* sta_cmd = app.add_subcommand("sta", "Longest-path arrival times and horizon");
  add_common(sta_cmd, common);

  auto* analyze_cmd = app.add_subcommand("analyze", "Timing model for one vector pair");
  add_common(analyze_cmd, common);
  analyze_cmd->add_option("--pair", pair_text, "<bits>-><bits>, PIs in name order (required)");

  auto* simulate_cmd = app.add_subcommand("simulate", "Event-driven transport-delay simulation");
  add_common(simulate_cmd, common);
  simulate_cmd->add_option("--pair", pair_text, "<bits>-><bits>, PIs in name order (required)");

  auto* maxdelay_cmd = app.add_subcommand("maxdelay", "Worst-case delay over all vector pairs");
  add_common(maxdelay_cmd, common);
  maxdelay_cmd->add_option("--strategy", search.strategy, "exhaustive | bnb")
      ->check(CLI::IsMember({"exhaustive", "bnb"}));
  maxdelay_cmd->add_option("--jobs", search.jobs, "Worker threads (bnb)")->check(CLI::Range(1u, 1024u));
  maxdelay_cmd->add_option("--time-limit", search.time_limit, "Seconds (bnb); 0 = none")
      ->check(CLI::NonNegativeNumber);
  maxdelay_cmd->add_option("--node-limit", search.node_limit, "Search nodes (bnb); 0 = none");
  maxdelay_cmd->add_option("--branch-order", search.branch_order, "fanout | name")
      ->check(CLI::IsMember({"fanout", "name"}));
  maxdelay_cmd->add_option("--value-order", search.value_order, "zero-first | one-first")
      ->check(CLI::IsMember({"zero-first", "one-first"}));
  maxdelay_cmd->add_option("--warm-start", search.warm_start,
                           "Hill-climbing evaluations before the tree search (bnb); 0 = off");
  maxdelay_cmd->add_option("--seed", search.seed, "Seed of the warm start");

  auto* export_cmd = app.add_subcommand("export-asp", "Write gate facts and ASP encodings");
  add_common(export_cmd, common);
  export_cmd->add_option("--out-dir", out_dir, "Write <name>.facts.lp/.basic.lp/.advanced.lp here");
  export_cmd->add_option("--name", name, "Base file name (default: input stem)");
  export_cmd->add_option("--variant", variant, "Printed when no --out-dir: facts | basic | advanced")
      ->check(CLI::IsMember({"facts", "basic", "advanced"}));

  auto* check_cmd = app.add_subcommand("check", "Containment property on random pairs");
  add_common(check_cmd, common);
  check_cmd->add_option("--pairs", check.pairs, "Number of random pairs");
  check_cmd->add_option("--seed", check.seed, "RNG seed");
  check_cmd->add_option("--answer", check.answer, "Solver output to cross-validate");

  auto* report_cmd = app.add_subcommand("report", "Waveform diagram for one vector pair");
  report_cmd->add_option("circuit", common.input, "Circuit file (.bench or gate facts)")->required();
  report_cmd->add_option("--input-format", common.input_format, "Input format")
      ->check(CLI::IsMember({"bench", "native"}));
  report_cmd->add_option("--delay", common.delay, "Delay model: unit | fanout[:k] | file=<path>");
  report_cmd->add_option("--out", common.out_path, "Write output to this file");
  report_cmd->add_flag("--json", common.json, "Wrap the document in JSON");
  report_cmd->add_option("--pair", pair_text, "<bits>-><bits>, PIs in name order (required)");
  report_cmd->add_option("--format", render_format, "text | svg");
  report_cmd->add_option("--source", source, "model | simulation")
      ->check(CLI::IsMember({"model", "simulation"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (app.get_subcommands().empty()) err << "run 'hazmax --help' for usage\n";
    return kUsage;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(common, out, err);
    if (sta_cmd->parsed()) return cmd_sta(common, out, err);
    if (analyze_cmd->parsed()) return cmd_analyze(common, pair_text, out, err);
    if (simulate_cmd->parsed()) return cmd_simulate(common, pair_text, out, err);
    if (maxdelay_cmd->parsed()) return cmd_maxdelay(common, search, out, err);
    if (export_cmd->parsed()) return cmd_export(common, out_dir, name, variant, out, err);
    if (check_cmd->parsed()) return cmd_check(common, check, out, err);
    if (report_cmd->parsed()) return cmd_report(common, pair_text, render_format, source, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << common.input << ": " << e.what() << '\n';
    return kInputError;
  } catch (const ValidationError& e) {
    err << "error: invalid circuit\n" << e.report().summary();
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kUsage;
}

}  // namespace hazmax::cli
