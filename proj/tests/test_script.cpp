#include <string>

#include "acl/errors.hpp"
#include "acl/script.hpp"
#include "doctest.h"

using namespace acl;

namespace {

const char* kSig = "x:0, alpha:2, beta:2";
const char* kAlpha = "zz[x | * > alpha < * | x]";
const char* kBeta = "zz[x | * > beta < * | x]";

std::string two_cells() {
  return std::string("zz[zz[x] | {:} > ") + kAlpha + " < {:} | zz[x] | {:} > " + kBeta +
         " < {:} | zz[x]]";
}

}  // namespace

TEST_CASE("signature literals") {
  auto sig = parse_signature("beta:2, x:0, alpha:2");
  CHECK(print_signature(*sig) == "x:0, alpha:2, beta:2");
  CHECK_THROWS_AS(parse_signature(""), ParseError);
  CHECK_THROWS_AS(parse_signature("x"), ParseError);
  CHECK_THROWS_AS(parse_signature("x:0, x:1"), ValidationError);
}

TEST_CASE("diagram literals round trip") {
  DiagramContext ctx(parse_signature(kSig));
  for (std::string text : {std::string("x"), std::string("zz[x]"), std::string(kAlpha),
                           two_cells()}) {
    NDiagram d = ctx.parse(text);
    CHECK(ctx.print(d) == text);
    CHECK(dimension_of(d.value) == d.dim);
    CHECK(ctx.parse(ctx.print(d)).value == d.value);
  }
  CHECK(ctx.parse(two_cells()).dim == 2);

  // whitespace is free
  CHECK(ctx.print(ctx.parse("zz[ x|*>alpha<*|x ]")) == kAlpha);

  Object a = ctx.parse(kAlpha).value;
  Object p = ctx.parse("zz[x]").value;
  Morphism m = ctx.parse_map("{:}", p, a, 1);
  CHECK(ctx.print_map(m) == "{:}");
  Morphism id = ctx.level(1).identity(a);
  CHECK(ctx.print_map(id) == "{0: *}");
  CHECK(ctx.parse_map("{0: *}", a, a, 1) == id);
}

TEST_CASE("diagram literal errors") {
  DiagramContext ctx(parse_signature(kSig));
  CHECK_THROWS_AS(ctx.parse("zz[x | * > alpha < * | x"), ParseError);
  CHECK_THROWS_AS(ctx.parse("gamma"), ValidationError);
  // alpha cannot map to x
  CHECK_THROWS_AS(ctx.parse("zz[alpha | * > x < * | alpha]"), ValidationError);
  // mixed dimensions
  CHECK_THROWS_AS(ctx.parse(std::string("zz[x | * > ") + kAlpha + " < * | x]"), Error);
  CHECK_THROWS_AS(ctx.parse("zz[x] extra"), ParseError);
  Object a = ctx.parse(kAlpha).value;
  CHECK_THROWS_AS(ctx.parse_map("{1: *}", a, a, 1), ValidationError);
  CHECK_THROWS_AS(ctx.parse_map("*", a, a, 1), ParseError);
}

TEST_CASE("scripts report status and failing step") {
  auto empty = run_script("");
  CHECK(empty.status == StepStatus::parse_failed);
  CHECK(exit_code(empty.status) == 2);

  auto no_sig = run_script(std::string("diagram ") + kAlpha);
  CHECK(no_sig.status == StepStatus::parse_failed);

  std::string base = std::string("signature ") + kSig + "\ndiagram " + two_cells() + "\n";
  auto ok = run_script(base + "contract 0 bias=left\n");
  REQUIRE(ok.status == StepStatus::ok);
  REQUIRE(ok.trace.size() == 1);
  CHECK(ok.trace[0].command == "contract 0 bias=left");
  CHECK(ok.history->length() == 1);

  auto unbiased = run_script(base + "contract 0\n");
  CHECK(unbiased.status == StepStatus::validation_failed);
  CHECK(exit_code(unbiased.status) == 1);
  CHECK(unbiased.error.find("step 1") != std::string::npos);

  auto range = run_script(base + "contract 1 len=2 bias=left\n");
  CHECK(range.status == StepStatus::validation_failed);

  auto bad_path = run_script(base + "anticontract 5 sink=[P:{:}]\n");
  CHECK(bad_path.status != StepStatus::ok);
  CHECK(bad_path.error.find("line 3") != std::string::npos);

  auto wrong = run_script(base + "contract 0 bias=left\nexpect " + two_cells() + "\n");
  CHECK(wrong.status == StepStatus::validation_failed);
  CHECK(wrong.error.find("line 4") != std::string::npos);
  CHECK(wrong.error.find("step 2") != std::string::npos);

  auto unknown = run_script(base + "frobnicate\n");
  CHECK(unknown.status == StepStatus::parse_failed);
}

TEST_CASE("multi-line statements and comments") {
  std::string text = std::string("# braid\nsignature ") + kSig +
                     "\ndiagram zz[zz[x]\n  | {:} > " + kAlpha + " < {:}  # first\n  | zz[x]]\n";
  auto r = run_script(text);
  REQUIRE(r.status == StepStatus::ok);
  CHECK(r.current->dim == 2);
}

TEST_CASE("traces are stable under replay") {
  std::string text = std::string("signature ") + kSig + "\ndiagram " + two_cells() +
                     "\ncontract 0 bias=right\n";
  auto a = run_script(text);
  auto b = run_script(text);
  REQUIRE(a.status == StepStatus::ok);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) CHECK(a.trace[i].to_json() == b.trace[i].to_json());
  CHECK(a.trace[0].hash.size() == 16);
}

TEST_CASE("a script without moves echoes its diagram") {
  auto r = run_script(std::string("signature ") + kSig + "\ndiagram " + two_cells() + "\n");
  REQUIRE(r.status == StepStatus::ok);
  CHECK(r.trace.empty());
  CHECK(r.current->value == r.initial->value);
  CHECK(r.history->length() == 0);
}

TEST_CASE("expand reverses a biased contraction") {
  std::string swapped = std::string("zz[zz[x] | {:} > ") + kBeta + " < {:} | zz[x] | {:} > " +
                        kAlpha + " < {:} | zz[x]]";
  std::string base = std::string("signature ") + kSig + "\ndiagram " + two_cells() +
                     "\ncontract 0 bias=left\n";
  auto ok = run_script(base + "expand 0 bias=right to=" + swapped + "\n");
  REQUIRE(ok.status == StepStatus::ok);
  CHECK(ok.history->length() == 2);
  CHECK(ok.history->regular.back() == DiagramContext(ok.signature).parse(swapped).value);
  // left bias puts beta below alpha, so the swapped diagram does not contract onto it
  auto wrong = run_script(base + "expand 0 bias=left to=" + swapped + "\n");
  CHECK(wrong.status == StepStatus::validation_failed);
  CHECK(run_script(base + "expand 0 bias=right\n").status == StepStatus::parse_failed);
}

TEST_CASE("nested anticontraction records the recursive step") {
  std::string text = std::string("signature ") + kSig +
                     "\ndiagram zz[zz[x] | {:} > " + kAlpha + " < {:} | zz[x]]\nlet a = alpha\n" +
                     "anticontract 0.0 sink=[a:*, a:*]\nanticontract 0.0 sink=[a:*, a:*]\n";
  auto r = run_script(text);
  REQUIRE(r.status == StepStatus::ok);
  REQUIRE(r.trace.size() == 2);
  CHECK(r.trace[0].recursive_steps == std::vector<std::string>{"bubble"});
  CHECK(r.trace[1].recursive_steps == std::vector<std::string>{"factorised-left"});
  CHECK(r.trace[1].round_trip);
  auto missing = run_script(text + "anticontract 0.0 sink=[b:*]\n");
  CHECK(missing.status == StepStatus::parse_failed);
  CHECK(missing.error.find("unknown diagram name 'b'") != std::string::npos);
}
