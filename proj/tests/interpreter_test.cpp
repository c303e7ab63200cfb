#include <gtest/gtest.h>

#include <random>

#include "corpus.h"
#include "oracle.h"
#include "origin/error.h"
#include "origin/interpreter.h"
#include "origin/parser.h"

namespace origin {
namespace {

using testing_support::corpus;
using testing_support::golden;
using testing_support::run_source;
using testing_support::RunSetup;

Value eval_in(std::string_view setup_source, std::string_view expr_source) {
    DeviceState device;
    MockTransport transport;
    BuiltinRegistry registry = BuiltinRegistry::standard();
    Interpreter interp(device, transport, registry);
    interp.execute(parse_source(setup_source));
    Program expr = parse_source(expr_source);
    return interp.evaluate(*std::get<ExprStmt>(expr.statements.at(0)->node).expr);
}

ErrorKind error_kind_of(std::string_view source, int* line = nullptr) {
    auto run = run_source(source);
    EXPECT_TRUE(run.outcome.error.has_value()) << source;
    if (!run.outcome.error) {
        return ErrorKind::FormatError;
    }
    if (line) {
        *line = run.outcome.error->line();
    }
    return run.outcome.error->kind();
}

TEST(InterpreterTest, Fig1Blink) {
    auto run = run_source(corpus("fig01_blink.origin"));
    ASSERT_TRUE(run.outcome.ok());
    EXPECT_EQ(run.events_jsonl, golden("fig01_blink.events.jsonl"));
    EXPECT_EQ(run.outcome.final_time_ms, 2000);
}

TEST(InterpreterTest, EmptyProgram) {
    auto run = run_source("");
    EXPECT_TRUE(run.outcome.ok());
    EXPECT_TRUE(run.outcome.events.empty());
    EXPECT_EQ(run.outcome.final_time_ms, 0);
}

TEST(InterpreterTest, Fig6InfiniteLoopStopsOnBudget) {
    RunSetup setup;
    setup.budget.max_statements = 100;
    auto run = run_source(corpus("fig06_infinite_loop.origin"), setup);
    ASSERT_TRUE(run.outcome.error.has_value());
    EXPECT_EQ(run.outcome.error->kind(), ErrorKind::BudgetExceeded);
    EXPECT_EQ(run.outcome.error->line(), 5);  // the wait(1000) that would be statement 101
    EXPECT_EQ(run.events_jsonl, golden("fig06_steps100.events.jsonl"));
    EXPECT_EQ(run.outcome.statements_executed, 100u);
}

TEST(InterpreterTest, ExpressionExamples) {
    EXPECT_EQ(eval_in("var i = 9", "i + 1").as_number(), 10.0);
    EXPECT_EQ(eval_in("", "\"a\" + 1").as_text(), "a1");
    EXPECT_EQ(eval_in("", "1 + \"a\"").as_text(), "1a");
    EXPECT_EQ(eval_in("", "\"x=\" + 10/4").as_text(), "x=2.5");
    EXPECT_EQ(eval_in("var arr = [500, 1000, 1500, 2000]", "arr[3]").as_number(), 2000.0);
    EXPECT_EQ(eval_in("", "7 % 3").as_number(), 1.0);
    EXPECT_EQ(eval_in("", "-2 * 3").as_number(), -6.0);
    EXPECT_EQ(eval_in("", "1 < 2").as_number(), 1.0);
    EXPECT_EQ(eval_in("", "2 <= 1").as_number(), 0.0);
    EXPECT_EQ(eval_in("", "!0").as_number(), 1.0);
    EXPECT_EQ(eval_in("", "HIGH == 1 && LOW == 0").as_number(), 1.0);
    EXPECT_EQ(eval_in("", "led == led").as_number(), 1.0);
    EXPECT_EQ(eval_in("", "led != speaker").as_number(), 1.0);
    EXPECT_EQ(eval_in("var n", "n == n").as_number(), 1.0);
}

TEST(InterpreterTest, LogicalOperatorsShortCircuit) {
    // The right operand would be a NameError if evaluated.
    EXPECT_EQ(eval_in("", "0 && missing").as_number(), 0.0);
    EXPECT_EQ(eval_in("", "1 || missing").as_number(), 1.0);
}

TEST(InterpreterTest, IndexErrors) {
    EXPECT_EQ(error_kind_of("[1,2][5]"), ErrorKind::IndexError);
    EXPECT_EQ(error_kind_of("[1,2][-1]"), ErrorKind::IndexError);
    EXPECT_EQ(error_kind_of("[1,2][0.5]"), ErrorKind::IndexError);
    EXPECT_EQ(error_kind_of("[1,2][\"0\"]"), ErrorKind::TypeError);
    EXPECT_EQ(error_kind_of("var n = 3\nn[0]"), ErrorKind::TypeError);
}

TEST(InterpreterTest, TypeErrors) {
    EXPECT_EQ(error_kind_of("1 + [1]"), ErrorKind::TypeError);
    EXPECT_EQ(error_kind_of("1 / 0"), ErrorKind::TypeError);
    EXPECT_EQ(error_kind_of("5 % 0"), ErrorKind::TypeError);
    EXPECT_EQ(error_kind_of("[1] == [1]"), ErrorKind::TypeError);
    EXPECT_EQ(error_kind_of("\"a\" < \"b\""), ErrorKind::TypeError);
    EXPECT_EQ(error_kind_of("if(\"x\"){}"), ErrorKind::TypeError);
    EXPECT_EQ(error_kind_of("-\"x\""), ErrorKind::TypeError);
    EXPECT_EQ(error_kind_of("!led"), ErrorKind::TypeError);
}

TEST(InterpreterTest, NullUseNamesTheVariable) {
    auto run = run_source("var i\nvar j = i + 1");
    ASSERT_TRUE(run.outcome.error);
    EXPECT_EQ(run.outcome.error->kind(), ErrorKind::TypeError);
    EXPECT_EQ(run.outcome.error->line(), 2);
    EXPECT_NE(run.outcome.error->message().find("'i'"), std::string::npos);

    auto cond = run_source("var flag\nif(flag){}");
    ASSERT_TRUE(cond.outcome.error);
    EXPECT_NE(cond.outcome.error->message().find("'flag'"), std::string::npos);
}

TEST(InterpreterTest, EnvironmentRules) {
    EXPECT_EQ(error_kind_of("var x = 1\nvar x = 2"), ErrorKind::NameError);
    EXPECT_EQ(error_kind_of("y = 1"), ErrorKind::NameError);
    EXPECT_EQ(error_kind_of("var z = missing"), ErrorKind::NameError);
    EXPECT_EQ(error_kind_of("var input = 1"), ErrorKind::NameError);
    EXPECT_EQ(error_kind_of("var led = 1"), ErrorKind::NameError);
    EXPECT_EQ(error_kind_of("HIGH = 0"), ErrorKind::NameError);
    EXPECT_EQ(error_kind_of("nosuch(1)"), ErrorKind::NameError);
    EXPECT_EQ(error_kind_of("var f = 1\nf(2)"), ErrorKind::NameError);

    // Shadowing an outer scope is legal and does not leak out of the block.
    auto run = run_source("var x = 1\nif(1){\nvar x = 2\nx = 3\n}\nvar y = x");
    ASSERT_TRUE(run.outcome.ok()) << run.outcome.error->describe();
    EXPECT_EQ(run.outcome.binding("y")->as_number(), 1.0);

    // Assignment reaches through to an outer declaration.
    auto outer = run_source("var x = 1\nif(1){\nx = 5\n}");
    EXPECT_EQ(outer.outcome.binding("x")->as_number(), 5.0);

    // Block-local declarations are discarded per iteration.
    auto per_iter = run_source("var total = 0\nloop(3){\nvar step = 2\ntotal = total + step\n}");
    ASSERT_TRUE(per_iter.outcome.ok());
    EXPECT_EQ(per_iter.outcome.binding("total")->as_number(), 6.0);
    EXPECT_EQ(per_iter.outcome.binding("step"), nullptr);
}

TEST(InterpreterTest, ArraysAreSharedByReference) {
    auto run = run_source("var a = [1, 2]\nvar b = a\nb[0] = 9\nvar first = a[0]");
    ASSERT_TRUE(run.outcome.ok());
    EXPECT_EQ(run.outcome.binding("first")->as_number(), 9.0);
}

TEST(InterpreterTest, IfElseIfChain) {
    const char* src =
        "var out = 0\n"
        "if(v < 0){\n out = 1\n}else if(v == 0){\n out = 2\n}else{\n out = 3\n}";
    for (auto [v, expected] : {std::pair{-5, 1}, {0, 2}, {7, 3}}) {
        auto run = run_source("var v = " + std::to_string(v) + "\n" + src);
        ASSERT_TRUE(run.outcome.ok());
        EXPECT_EQ(run.outcome.binding("out")->as_number(), expected);
    }
}

TEST(InterpreterTest, LoopFigures) {
    auto fig7 = run_source(corpus("fig07_while_loop.origin"));
    ASSERT_TRUE(fig7.outcome.ok());
    EXPECT_EQ(fig7.events_jsonl, golden("fig07_while_loop.events.jsonl"));
    EXPECT_EQ(fig7.outcome.final_time_ms, 20000);
    EXPECT_EQ(fig7.outcome.binding("i")->as_number(), 10.0);

    auto fig8 = run_source(corpus("fig08_for_loop.origin"));
    ASSERT_TRUE(fig8.outcome.ok());
    EXPECT_EQ(fig8.events_jsonl, golden("fig08_for_loop.events.jsonl"));
    EXPECT_EQ(fig8.outcome.final_time_ms, 20000);

    auto fig9 = run_source(corpus("fig09_foreach_loop.origin"));
    ASSERT_TRUE(fig9.outcome.ok());
    EXPECT_EQ(fig9.events_jsonl, golden("fig09_foreach_loop.events.jsonl"));
    EXPECT_EQ(fig9.outcome.final_time_ms, 10000);
    // The pre-declared loop variable keeps the last element.
    EXPECT_EQ(fig9.outcome.binding("i")->as_number(), 2000.0);
}

TEST(InterpreterTest, CountLoopEdgeCases) {
    auto count = [](std::string_view header) {
        auto run = run_source("var n = 0\nloop(" + std::string(header) + "){\nn = n + 1\n}");
        EXPECT_TRUE(run.outcome.ok()) << header;
        return run.outcome.binding("n")->as_number();
    };
    EXPECT_EQ(count("0"), 0.0);
    EXPECT_EQ(count("-3"), 0.0);
    EXPECT_EQ(count("0.9"), 0.0);
    EXPECT_EQ(count("2.7"), 2.0);
    EXPECT_EQ(count("5"), 5.0);
    EXPECT_EQ(error_kind_of("loop(\"3\"){\n}"), ErrorKind::TypeError);
    EXPECT_EQ(error_kind_of("var c\nloop(c){\n}"), ErrorKind::TypeError);
}

TEST(InterpreterTest, ForEachBindings) {
    // No prior declaration: a loop-local binding that vanishes afterwards.
    auto fresh = run_source("var sum = 0\nloop(e in [1, 2, 3]){\nsum = sum + e\n}");
    ASSERT_TRUE(fresh.outcome.ok());
    EXPECT_EQ(fresh.outcome.binding("sum")->as_number(), 6.0);
    EXPECT_EQ(fresh.outcome.binding("e"), nullptr);

    auto empty = run_source("var i = 5\nloop(i in []){\n}");
    EXPECT_EQ(empty.outcome.binding("i")->as_number(), 5.0);

    EXPECT_EQ(error_kind_of("loop(i in 3){\n}"), ErrorKind::TypeError);
    EXPECT_EQ(error_kind_of("loop(led in [1]){\n}"), ErrorKind::NameError);
    EXPECT_EQ(error_kind_of("loop(wait in [1]){\n}"), ErrorKind::NameError);
}

TEST(InterpreterTest, VirtualTimeBudget) {
    RunSetup setup;
    setup.budget.max_virtual_ms = 1500;
    auto run = run_source(corpus("fig01_blink.origin"), setup);
    ASSERT_TRUE(run.outcome.error);
    EXPECT_EQ(run.outcome.error->kind(), ErrorKind::BudgetExceeded);
    EXPECT_EQ(run.outcome.error->line(), 4);
    EXPECT_EQ(run.outcome.final_time_ms, 1000);
    EXPECT_EQ(run.outcome.events.size(), 2u);

    setup.budget.max_virtual_ms = 2000;
    EXPECT_TRUE(run_source(corpus("fig01_blink.origin"), setup).outcome.ok());
}

TEST(InterpreterTest, ErrorsKeepEarlierEvents) {
    auto run = run_source("output(led, HIGH)\nwait(10)\noutput(speaker, 1)\nvar x = [1][3]\noutput(led, LOW)");
    ASSERT_TRUE(run.outcome.error);
    EXPECT_EQ(run.outcome.error->kind(), ErrorKind::IndexError);
    EXPECT_EQ(run.outcome.error->line(), 4);
    EXPECT_EQ(run.outcome.events.size(), 2u);
}

TEST(InterpreterTest, ErrorLineIsTheOffendingExpression) {
    auto run = run_source("var a = json(\n\"k\",\n1,\n\"j\",\nled)");
    ASSERT_TRUE(run.outcome.error);
    EXPECT_EQ(run.outcome.error->kind(), ErrorKind::TypeError);
    EXPECT_EQ(run.outcome.error->line(), 1);

    auto nested = run_source("loop(2){\n  if(1){\n    var q = 1 + \"x\" + [1] * 2\n  }\n}");
    ASSERT_TRUE(nested.outcome.error);
    EXPECT_EQ(nested.outcome.error->line(), 3);
}

// Count-loop invariance: whatever the body does to the count variable, the
// number of iterations is fixed when the loop starts.
TEST(InterpreterPropertyTest, CountLoopIgnoresMutationOfItsVariable) {
    std::mt19937 rng(2024);
    const std::vector<std::string> mutations = {"n = n + 1", "n = 0", "n = n * 2", "n = -5", "n = n - 1",
                                                "n = 1000", "if(1){\nvar n = 3\n}", "ticks = ticks + 0"};
    for (int round = 0; round < 200; ++round) {
        int start = std::uniform_int_distribution<int>(0, 15)(rng);
        std::string body;
        int k = std::uniform_int_distribution<int>(1, 4)(rng);
        for (int i = 0; i < k; ++i) {
            body += mutations[rng() % mutations.size()] + "\n";
        }
        std::string src = "var n = " + std::to_string(start) + "\nvar ticks = 0\nloop(n){\nticks = ticks + 1\n" +
                          body + "}";
        auto run = run_source(src);
        ASSERT_TRUE(run.outcome.ok()) << src;
        EXPECT_EQ(run.outcome.binding("ticks")->as_number(), start) << src;
    }
}

// Figs 7 and 8 cross-checked: a counted while-loop and a count loop over the
// same straight-line body give identical event logs.
TEST(InterpreterPropertyTest, ConditionalLoopMatchesCountLoop) {
    const std::string body = "output( led, HIGH)\nwait(250)\noutput(speaker, 1)\noutput( led, LOW)\nwait(750)\n";
    for (int n = 0; n <= 20; ++n) {
        auto as_while = run_source("var i = 0\nloop( i < " + std::to_string(n) + " ){\n" + body + "i = i + 1\n}");
        auto as_count = run_source("var i = " + std::to_string(n) + "\nloop(i){\n" + body + "}");
        ASSERT_TRUE(as_while.outcome.ok());
        ASSERT_TRUE(as_count.outcome.ok());
        EXPECT_EQ(as_while.events_jsonl, as_count.events_jsonl) << n;
        EXPECT_EQ(as_while.outcome.events.size(), static_cast<std::size_t>(3 * n));
    }
}

std::string random_control_program(std::mt19937& rng) {
    std::string src = "var a = 0\nvar b = 3\nvar xs = [1, 2, 3]\n";
    auto simple = [&]() -> std::string {
        switch (rng() % 4) {
            case 0: return "a = a + 1\n";
            case 1: return "b = b - 1\n";
            case 2: return "xs[1] = a\n";
            default: return "var t = a * 2\n";
        }
    };
    auto block = [&](int depth, auto& self) -> std::string {
        std::string out;
        int n = std::uniform_int_distribution<int>(0, 3)(rng);
        for (int i = 0; i < n; ++i) {
            int pick = depth > 0 ? static_cast<int>(rng() % 6) : 0;
            if (pick <= 2) {
                out += simple();
            } else if (pick == 3) {
                out += "if(a % 2 == 0){\n" + self(depth - 1, self) + "}else if(b > 0){\n" + self(depth - 1, self) +
                       "}else{\n" + self(depth - 1, self) + "}\n";
            } else if (pick == 4) {
                out += "loop(" + std::to_string(rng() % 4) + "){\n" + self(depth - 1, self) + "}\n";
            } else {
                out += "loop(e in xs){\n" + self(depth - 1, self) + "}\n";
            }
        }
        return out;
    };
    return src + block(3, block);
}

// Budget accounting: the interpreter's statement count equals what the
// reference evaluator counts, with and without the budget cutting in.
TEST(InterpreterPropertyTest, StatementCountMatchesOracle) {
    std::mt19937 rng(5);
    BuiltinRegistry registry = BuiltinRegistry::standard();
    for (int round = 0; round < 300; ++round) {
        std::string src = random_control_program(rng);
        Program program = parse_source(src);
        std::uint64_t limit = round % 3 == 0 ? std::uniform_int_distribution<std::uint64_t>(1, 40)(rng) : 1'000'000;
        oracle::Result expected = oracle::evaluate(program, limit);

        DeviceState device;
        MockTransport transport;
        RunOutcome outcome = run(program, device, registry, transport, ExecutionBudget{limit, std::nullopt});
        EXPECT_EQ(outcome.statements_executed, expected.statements) << src;
        EXPECT_EQ(outcome.error.has_value(), expected.error.has_value()) << src;
        if (outcome.error && expected.error) {
            EXPECT_EQ(outcome.error->kind(), *expected.error) << src;
        }
    }
}

TEST(InterpreterPropertyTest, DeterministicAndMonotoneClock) {
    RunSetup setup;
    setup.trace = "{\"t\":0,\"sensor\":\"accelerometerX\",\"value\":0.5}\n";
    setup.budget.max_statements = 5000;
    for (const char* fig : {"fig05_conditional.origin", "fig06_infinite_loop.origin", "fig09_foreach_loop.origin"}) {
        auto first = run_source(corpus(fig), setup);
        auto second = run_source(corpus(fig), setup);
        EXPECT_EQ(first.events_jsonl, second.events_jsonl) << fig;
        for (std::size_t i = 1; i < first.outcome.events.size(); ++i) {
            EXPECT_LE(first.outcome.events[i - 1].t_ms, first.outcome.events[i].t_ms);
        }
    }
}

TEST(InterpreterTest, OnlyWaitMovesTheClock) {
    RunSetup setup;
    setup.wifi = R"({"networks":[{"ssid":"s","password":"p"}]})";
    auto run = run_source(
        "output(led, HIGH)\noutput(\"x\")\ncall(\"1\")\nmessage(\"1\", \"b\")\nwifiConnect(\"s\", \"p\")\n"
        "var r = request(\"http://h\")\naddJson(r, json(\"a\", 1))\nget(r)\npost(r)\nput(r)\ndelete(r)\n"
        "var v = input(light)",
        setup);
    ASSERT_TRUE(run.outcome.ok()) << run.outcome.error->describe();
    EXPECT_EQ(run.outcome.final_time_ms, 0);
    for (const auto& ev : run.outcome.events) {
        EXPECT_EQ(ev.t_ms, 0);
    }
}

} // namespace
} // namespace origin
