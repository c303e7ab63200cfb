#include <gtest/gtest.h>

#include <random>

#include <json.hpp>

#include "corpus.h"
#include "origin/error.h"
#include "origin/parser.h"

namespace origin {
namespace {

using nlohmann::json;
using testing_support::corpus;
using testing_support::golden;

json ast_of(std::string_view source) {
    return json::parse(dump_ast(parse_source(source)));
}

const char* kFigures[] = {
    "fig01_blink.origin",          "fig02_accelerometer.origin", "fig03_call.origin",
    "fig04_message.origin",        "fig05_conditional.origin",   "fig06_infinite_loop.origin",
    "fig07_while_loop.origin",     "fig08_for_loop.origin",      "fig09_foreach_loop.origin",
    "fig10_network.origin",
};

TEST(ParserTest, EveryFigureParses) {
    for (const char* fig : kFigures) {
        EXPECT_NO_THROW(parse_source(corpus(fig))) << fig;
    }
}

TEST(ParserTest, EmptyProgram) {
    EXPECT_EQ(dump_ast(parse_source("")), R"({"statements":[]})");
    EXPECT_EQ(dump_ast(parse_source("\n\n// nothing\n")), R"({"statements":[]})");
}

TEST(ParserTest, Fig1MatchesGolden) {
    std::string expected = golden("fig01_blink.ast.json");
    while (!expected.empty() && expected.back() == '\n') {
        expected.pop_back();
    }
    EXPECT_EQ(dump_ast(parse_source(corpus("fig01_blink.origin"))), expected);
}

TEST(ParserTest, DumpIsDeterministic) {
    for (const char* fig : kFigures) {
        std::string src = corpus(fig);
        EXPECT_EQ(dump_ast(parse_source(src)), dump_ast(parse_source(src))) << fig;
    }
}

TEST(ParserTest, Fig5ConditionalShape) {
    json ast = ast_of(corpus("fig05_conditional.origin"));
    const json& stmt = ast["statements"][1];
    EXPECT_EQ(stmt["kind"], "If");
    EXPECT_EQ(stmt["condition"]["kind"], "Binary");
    EXPECT_EQ(stmt["condition"]["op"], "GT");
    EXPECT_EQ(stmt["condition"]["lhs"]["name"], "a");
    EXPECT_EQ(stmt["condition"]["rhs"]["value"], 0);
    EXPECT_EQ(stmt["then"].size(), 1u);
    EXPECT_EQ(stmt["else"].size(), 1u);
}

TEST(ParserTest, LoopHeaderClassification) {
    EXPECT_EQ(ast_of("loop(){}")["statements"][0]["header"]["kind"], "Infinite");
    EXPECT_TRUE(ast_of("loop(){}")["statements"][0]["body"].empty());

    json foreach = ast_of("loop(i in arr){}")["statements"][0]["header"];
    EXPECT_EQ(foreach["kind"], "ForEach");
    EXPECT_EQ(foreach["variable"], "i");
    EXPECT_EQ(foreach["iterable"]["name"], "arr");

    EXPECT_EQ(ast_of("loop(i){}")["statements"][0]["header"]["kind"], "Count");
    EXPECT_EQ(ast_of("loop(i < 10){}")["statements"][0]["header"]["kind"], "Conditional");
    EXPECT_EQ(ast_of("loop(a && b){}")["statements"][0]["header"]["kind"], "Conditional");
    EXPECT_EQ(ast_of("loop(!done){}")["statements"][0]["header"]["kind"], "Conditional");
    EXPECT_EQ(ast_of("loop((i < 10)){}")["statements"][0]["header"]["kind"], "Conditional");
    EXPECT_EQ(ast_of("loop(n * 2){}")["statements"][0]["header"]["kind"], "Count");
    EXPECT_EQ(ast_of("loop(-n){}")["statements"][0]["header"]["kind"], "Count");
}

TEST(ParserTest, Precedence) {
    json e = ast_of("1 + 2 * 3")["statements"][0]["expr"];
    EXPECT_EQ(e["op"], "PLUS");
    EXPECT_EQ(e["lhs"]["value"], 1);
    EXPECT_EQ(e["rhs"]["op"], "STAR");

    json cmp = ast_of("a + 1 < b && c || d")["statements"][0]["expr"];
    EXPECT_EQ(cmp["op"], "OR");
    EXPECT_EQ(cmp["lhs"]["op"], "AND");
    EXPECT_EQ(cmp["lhs"]["lhs"]["op"], "LT");
    EXPECT_EQ(cmp["lhs"]["lhs"]["lhs"]["op"], "PLUS");

    json neg = ast_of("-a * b")["statements"][0]["expr"];
    EXPECT_EQ(neg["op"], "STAR");
    EXPECT_EQ(neg["lhs"]["kind"], "Unary");
}

TEST(ParserTest, LeftAssociative) {
    json e = ast_of("10 - 3 - 2")["statements"][0]["expr"];
    EXPECT_EQ(e["op"], "MINUS");
    EXPECT_EQ(e["lhs"]["op"], "MINUS");
    EXPECT_EQ(e["rhs"]["value"], 2);
}

TEST(ParserTest, ElseIfChainAndElseOnNextLine) {
    json s = ast_of("if(a){\n}else if(b){\n}\nelse{\nx = 1\n}")["statements"][0];
    EXPECT_EQ(s["else"]["kind"], "If");
    EXPECT_EQ(s["else"]["else"].size(), 1u);
}

TEST(ParserTest, DanglingElseBindsToNearestIf) {
    json s = ast_of("if(a){\nif(b){\n}else{\n}\n}")["statements"][0];
    EXPECT_TRUE(s["else"].is_null());
    EXPECT_EQ(s["then"][0]["else"].size(), 0u);
    EXPECT_TRUE(s["then"][0]["else"].is_array());
}

TEST(ParserTest, VarWithoutInitializerAndIndexing) {
    json s = ast_of("var i\narr[2] = arr[0]")["statements"];
    EXPECT_TRUE(s[0]["initializer"].is_null());
    EXPECT_EQ(s[1]["kind"], "Assign");
    EXPECT_EQ(s[1]["target"]["kind"], "Index");
    EXPECT_EQ(s[1]["value"]["kind"], "Index");
}

TEST(ParserTest, MultiLineCallArguments) {
    json s = ast_of("var c = wifiConnect( ssid,\npassword)")["statements"][0];
    EXPECT_EQ(s["initializer"]["args"].size(), 2u);
}

void expect_parse_error(std::string_view source, int line, std::string_view expected_fragment) {
    try {
        parse_source(source);
        FAIL() << "expected ParseError for: " << source;
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), line) << source;
        EXPECT_NE(e.expected().find(expected_fragment), std::string::npos) << e.expected();
    }
}

TEST(ParserTest, Errors) {
    expect_parse_error("if( a > 0)", 1, "LBRACE");
    expect_parse_error("var a = 1\nif( a > 0)\n", 2, "LBRACE");
    expect_parse_error("loop(){\n output(led, HIGH)\n", 2, "RBRACE");
    expect_parse_error("var x = y = 3", 1, "NEWLINE");
    expect_parse_error("if (x = 1) {}", 1, "RPAREN");
    expect_parse_error("1 + 2 = 3", 1, "identifier");
    expect_parse_error("var = 3", 1, "IDENT");
    expect_parse_error("if(a) output(led, HIGH)", 1, "LBRACE");
    expect_parse_error("x = (1 + 2", 1, "RPAREN");
    expect_parse_error("var a = 1 var b = 2", 1, "NEWLINE");
    expect_parse_error("}", 1, "expression");
}

TEST(ParserPropertyTest, LoopHeadersLandInExactlyOneVariant) {
    std::mt19937 rng(7);
    const std::vector<std::string> leaves = {"i", "10", "n", "arr", "x[0]", "(i)"};
    const std::vector<std::string> ops = {"+", "-", "*", "/", "%", "<", "<=", ">", ">=", "==", "!=", "&&", "||"};
    auto gen = [&](auto& self, int depth) -> std::string {
        int pick = static_cast<int>(rng() % 4);
        if (depth == 0 || pick == 0) {
            return leaves[rng() % leaves.size()];
        }
        if (pick == 1) {
            return (rng() % 2 ? "!" : "-") + self(self, depth - 1);
        }
        if (pick == 2) {
            return "(" + self(self, depth - 1) + ")";
        }
        return self(self, depth - 1) + " " + ops[rng() % ops.size()] + " " + self(self, depth - 1);
    };
    for (int round = 0; round < 500; ++round) {
        std::string header;
        int shape = static_cast<int>(rng() % 5);
        if (shape == 0) {
            header = "";
        } else if (shape == 1) {
            header = "v in " + gen(gen, 2);
        } else {
            header = gen(gen, 3);
        }
        json h = ast_of("loop(" + header + "){\n}")["statements"][0]["header"];
        const std::string kind = h["kind"];
        int matches = (kind == "Infinite") + (kind == "ForEach") + (kind == "Conditional") + (kind == "Count");
        EXPECT_EQ(matches, 1) << header;
        if (shape == 0) {
            EXPECT_EQ(kind, "Infinite");
        } else if (shape == 1) {
            EXPECT_EQ(kind, "ForEach");
        } else if (kind == "Conditional") {
            json root = h["condition"];
            bool logical = root["kind"] == "Unary" ? root["op"] == "NOT" : root["kind"] == "Binary";
            EXPECT_TRUE(logical) << header;
        }
    }
}

TEST(ParserPropertyTest, ErrorLinesStayInsideSource) {
    std::mt19937 rng(11);
    const std::vector<std::string> pieces = {"var", "x", "=", "1", "if", "(", ")", "{", "}", "\n", "loop", "in",
                                             "[", "]", ",", "+", "else", "output", "\"s\""};
    for (int round = 0; round < 1000; ++round) {
        std::string source;
        int n = std::uniform_int_distribution<int>(1, 25)(rng);
        for (int i = 0; i < n; ++i) {
            source += pieces[rng() % pieces.size()] + " ";
        }
        int lines = 1 + static_cast<int>(std::count(source.begin(), source.end(), '\n'));
        try {
            parse_source(source);
        } catch (const ParseError& e) {
            EXPECT_GE(e.line(), 1);
            EXPECT_LE(e.line(), lines) << source;
        }
    }
}

} // namespace
} // namespace origin
