#include <doctest.h>

#include <algorithm>
#include <random>

#include "data.hpp"
#include "hazmax/asp_export.hpp"
#include "hazmax/netlist.hpp"
#include "oracles.hpp"
#include "random_circuit.hpp"

using namespace hazmax;
using namespace hazmax::testing;

namespace {

std::vector<std::string> names(const Circuit& c, std::span<const SignalIndex> ids) {
  std::vector<std::string> out;
  for (auto s : ids) out.push_back(c.name(s));
  return out;
}

using Names = std::vector<std::string>;

}  // namespace

TEST_CASE("single buffer from bench text") {
  const Circuit c = parse_bench("INPUT(a)\nOUTPUT(y)\ny = BUF(a)");
  CHECK(c.gate_count() == 1);
  CHECK(names(c, c.pis()) == Names{"a"});
  CHECK(names(c, c.pos()) == Names{"y"});
  CHECK(c.gate(c.index_of("y")).kind == GateKind::Buff);
  CHECK(c.gate(c.index_of("y")).delay == 0);
  CHECK_FALSE(c.delays_assigned());
}

TEST_CASE("keyword spellings") {
  for (auto kw : {"NOT", "INV", "not", "Inv"}) CHECK(gate_kind_from_keyword(kw) == GateKind::Inv);
  for (auto kw : {"BUF", "BUFF"}) CHECK(gate_kind_from_keyword(kw) == GateKind::Buff);
  CHECK_FALSE(gate_kind_from_keyword("DFF").has_value());
  CHECK(controlling_value(GateKind::Nand) == Bit{0});
  CHECK(controlling_value(GateKind::Nor) == Bit{1});
  CHECK_FALSE(controlling_value(GateKind::Xor).has_value());
}

TEST_CASE("two-level example netlist") {
  const Circuit c = parse_bench(read_data("two_level.bench"));
  CHECK(c.gate_count() == 5);
  CHECK(names(c, c.pis()) == Names{"a", "b", "c"});
  CHECK(names(c, c.pos()) == Names{"y"});
  CHECK(c.fanout(c.index_of("b")) == 3);
  CHECK(c.fanout(c.index_of("y")) == 0);

  const ValidationReport r = validate(read_bench(read_data("two_level.bench")));
  CHECK(r.ok());
  REQUIRE(r.topo_order.size() == 5);
  auto pos = [&](const std::string& s) {
    return std::find(r.topo_order.begin(), r.topo_order.end(), s) - r.topo_order.begin();
  };
  CHECK(pos("d") < pos("f"));
  CHECK(pos("e") < pos("g"));
  CHECK(pos("f") < pos("y"));
  CHECK(pos("g") < pos("y"));
}

TEST_CASE("bench syntax errors carry a position") {
  try {
    parse_bench("INPUT(a)\nOUTPUT(y)\ny = NAND(a)\n");
    FAIL("expected an arity error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("NAND") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_bench("INPUT(a)\ny = FOO(a, a)\n"), ParseError);
  CHECK_THROWS_AS(parse_bench("INPUT(a\n"), ParseError);
  CHECK_THROWS_AS(parse_bench("INPUT(a)\nq = DFF(a)\n"), ParseError);
}

TEST_CASE("CRLF and comments") {
  const Circuit c = parse_bench("# header\r\nINPUT(a)\r\nOUTPUT(y)\r\ny = NOT(a) # trailing\r\n");
  CHECK(c.gate_count() == 1);
}

TEST_CASE("validation findings") {
  SUBCASE("xor arity") {
    const auto r = validate(read_bench("INPUT(a)\nINPUT(b)\nINPUT(c)\nOUTPUT(y)\ny = XOR(a, b, c)\n"));
    CHECK(r.has(ViolationKind::Arity));
  }
  SUBCASE("self loop") {
    const auto r = validate(read_bench("INPUT(a)\nOUTPUT(y)\ny = AND(y, a)\n"));
    CHECK(r.has(ViolationKind::Cycle));
    CHECK_THROWS_AS(parse_bench("INPUT(a)\nOUTPUT(y)\ny = AND(y, a)\n"), ValidationError);
  }
  SUBCASE("longer cycle") {
    const auto r = validate(read_bench("INPUT(a)\nOUTPUT(z)\nx = AND(a, z)\nz = OR(x, a)\n"));
    CHECK(r.has(ViolationKind::Cycle));
  }
  SUBCASE("two drivers") {
    const auto r = validate(read_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = AND(a, b)\ny = OR(a, b)\n"));
    CHECK(r.has(ViolationKind::MultipleDrivers));
  }
  SUBCASE("undriven read") {
    const auto r = validate(read_bench("INPUT(a)\nOUTPUT(y)\ny = AND(a, q)\n"));
    CHECK(r.has(ViolationKind::Undriven));
  }
  SUBCASE("output never driven") {
    const auto r = validate(read_bench("INPUT(a)\nOUTPUT(y)\nOUTPUT(z)\ny = NOT(a)\n"));
    CHECK(r.has(ViolationKind::Undriven));
  }
  SUBCASE("dangling input") {
    const auto r = validate(read_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = NOT(a)\n"));
    CHECK(r.has(ViolationKind::Dangling));
  }
  SUBCASE("xor duplicate input rejected, and duplicate allowed") {
    CHECK(validate(read_bench("INPUT(a)\nOUTPUT(y)\ny = XOR(a, a)\n")).has(ViolationKind::DuplicateInput));
    CHECK(validate(read_bench("INPUT(a)\nOUTPUT(y)\ny = AND(a, a)\n")).ok());
  }
  SUBCASE("empty circuit") {
    const auto r = validate(Netlist{});
    CHECK(r.ok());
    CHECK(r.warnings.size() == 1);
  }
}

TEST_CASE("native facts") {
  const Circuit inv = parse_native("gate_delay(y,inv,1). gate_in(y,inv,a).");
  CHECK(inv.gate_count() == 1);
  CHECK(inv.gate(inv.index_of("y")).delay == 1);

  const Circuit nand = parse_native(
      "gate_delay(y, nand, 4).\ngate_in(y, nand, a).\ngate_in(y, nand, b).\ngate_in(y, nand, c).\n");
  const auto& g = nand.gate(nand.index_of("y"));
  CHECK(g.kind == GateKind::Nand);
  CHECK(names(nand, g.inputs) == Names{"a", "b", "c"});
  CHECK(g.delay == 4);

  CHECK_THROWS_AS(parse_native("gate_in(y,nand,a)."), ParseError);
  CHECK_THROWS_AS(parse_native("gate_delay(y,nand,2). gate_in(y,nand,a). gate_in(y,nor,b)."), ParseError);
  CHECK_THROWS_AS(parse_native("gate_delay(y,and,2). gate_delay(y,and,3). gate_in(y,and,a). gate_in(y,and,b)."),
                  ParseError);
  CHECK_THROWS_AS(parse_native("gate_delay(y,and,2)."), ParseError);
  CHECK_THROWS_AS(parse_native("foo(y)."), ParseError);
}

TEST_CASE("delay models") {
  const Circuit raw = parse_bench(read_data("two_level.bench"));
  SUBCASE("explicit") {
    const Circuit c = assign_delays(raw, delay_model::Explicit{{{"d", 2}, {"e", 3}, {"f", 2}, {"g", 2}, {"y", 2}}});
    CHECK(c.gate(c.index_of("e")).delay == 3);
    CHECK(c.delays_assigned());
    CHECK_THROWS_AS(assign_delays(raw, delay_model::Explicit{{{"d", 2}}}), std::invalid_argument);
    CHECK_THROWS_AS(assign_delays(raw, delay_model::Explicit{{{"d", 0}, {"e", 3}, {"f", 2}, {"g", 2}, {"y", 2}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(assign_delays(c, delay_model::Explicit{{{"a", 1}}}), std::invalid_argument);
  }
  SUBCASE("unit") {
    const Circuit c = assign_delays(raw, delay_model::Unit{});
    for (SignalIndex s : c.topo()) CHECK(c.gate(s).delay == 1);
  }
  SUBCASE("fanout") {
    const Circuit chain = assign_delays(parse_bench("INPUT(a)\nOUTPUT(y)\nm = NOT(a)\ny = NOT(m)\n"),
                                        delay_model::Fanout{});
    CHECK(chain.gate(chain.index_of("m")).delay == 1);
    CHECK(chain.gate(chain.index_of("y")).delay == 1);
    const Circuit c = assign_delays(raw, delay_model::Fanout{2});
    CHECK(c.gate(c.index_of("d")).delay == 2);
    CHECK(c.gate(c.index_of("y")).delay == 1);
  }
  SUBCASE("model strings") {
    CHECK(std::holds_alternative<delay_model::Unit>(parse_delay_model("unit")));
    CHECK(std::get<delay_model::Fanout>(parse_delay_model("fanout")).scale == 1);
    CHECK(std::get<delay_model::Fanout>(parse_delay_model("fanout:3")).scale == 3);
    CHECK_THROWS_AS(parse_delay_model("fanout:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_delay_model("lognormal"), std::invalid_argument);
    CHECK(parse_delay_file("# c\nd 2\n\ne 3\n") == std::map<std::string, Time>{{"d", 2}, {"e", 3}});
    CHECK_THROWS_AS(parse_delay_file("d\n"), ParseError);
  }
}

TEST_CASE("random circuits: derived PIs/POs and topological order") {
  std::mt19937_64 rng(101);
  for (int k = 0; k < 200; ++k) {
    const Netlist net = random_netlist(rng);
    const Circuit c = Circuit::from_netlist(net);
    const RefIo io = scan_io(net);
    const auto pis = names(c, c.pis());
    const auto pos = names(c, c.pos());
    CHECK(std::set<std::string>(pis.begin(), pis.end()) == io.pis);
    CHECK(std::set<std::string>(pos.begin(), pos.end()) == io.pos);

    std::vector<bool> seen(c.signal_count(), false);
    for (auto s : c.pis()) seen[s] = true;
    for (auto s : c.topo()) {
      for (auto in : c.gate(s).inputs) CHECK(seen[in]);
      seen[s] = true;
    }
  }
}

TEST_CASE("fact round trip") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 100; ++k) {
    const Circuit c = random_circuit(rng);
    const Circuit back = parse_native(emit_facts(c));
    REQUIRE(back.signal_count() == c.signal_count());
    for (SignalIndex s = 0; s < c.signal_count(); ++s) {
      REQUIRE(back.name(s) == c.name(s));
      REQUIRE(back.is_pi(s) == c.is_pi(s));
      if (c.is_pi(s)) continue;
      const auto& a = c.gate(s);
      const auto& b = back.gate(s);
      CHECK(a.kind == b.kind);
      CHECK(a.delay == b.delay);
      CHECK(std::set<SignalIndex>(a.inputs.begin(), a.inputs.end()) ==
            std::set<SignalIndex>(b.inputs.begin(), b.inputs.end()));
    }
  }
}

TEST_CASE("odd names survive the fact round trip") {
  const Circuit c = assign_delays(
      parse_bench("INPUT(N1)\nINPUT(2x)\nOUTPUT(not)\nnot = NAND(N1, 2x)\n"), delay_model::Unit{});
  const Circuit back = parse_native(emit_facts(c));
  CHECK(back.find("N1").has_value());
  CHECK(back.find("2x").has_value());
  CHECK(back.find("not").has_value());
}

TEST_CASE("a single fact input on an and-type gate reads as a repeated input") {
  const Circuit c = parse_native("gate_delay(y,and,1). gate_in(y,and,a). gate_in(y,and,a).");
  CHECK(c.gate(c.index_of("y")).inputs.size() == 2);
  CHECK_THROWS_AS(parse_native("gate_delay(y,xor,1). gate_in(y,xor,a)."), ValidationError);
}
