#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "oracles.hpp"
#include "thinlaw/expr.hpp"
#include "thinlaw/transforms.hpp"

using namespace thinlaw;

namespace {

DistExpr random_expr(SplitMix64& rng, int depth) {
    auto leaf = [&rng]() {
        DistExpr e;
        switch (rng.next_int(0, 5)) {
            case 0:
                e.head = "bin";
                e.numbers = {static_cast<double>(rng.next_int(1, 10)),
                             rng.next_real(0.05, 0.95)};
                break;
            case 1:
                e.head = "pois";
                e.numbers = {rng.next_real(0.1, 4.0)};
                break;
            case 2:
                e.head = "geom";
                e.numbers = {rng.next_real(0.2, 0.9)};
                break;
            case 3:
                e.head = "nb";
                e.numbers = {rng.next_real(0.5, 4.0), rng.next_real(0.2, 0.9)};
                break;
            case 4:
                e.head = "bern";
                e.numbers = {rng.next_real(0.05, 0.95)};
                break;
            default: {
                e.head = "pmf";
                auto k = rng.next_int(2, 5);
                for (std::int64_t i = 0; i < k; ++i)
                    e.numbers.push_back(rng.next_real(0.1, 2.0));
                break;
            }
        }
        return e;
    };
    if (depth <= 0 || rng.next_unit() < 0.4) return leaf();
    DistExpr e;
    switch (rng.next_int(0, 4)) {
        case 0:
            e.head = "thin";
            e.children = {random_expr(rng, depth - 1)};
            e.numbers = {rng.next_real(0.05, 1.0)};
            break;
        case 1:
            e.head = "conv";
            e.children = {random_expr(rng, depth - 1), random_expr(rng, depth - 1)};
            break;
        case 2:
            e.head = "pow";
            e.children = {random_expr(rng, depth - 1)};
            e.numbers = {static_cast<double>(rng.next_int(1, 3))};
            break;
        case 3: {
            e.head = "sbias";
            DistExpr child = random_expr(rng, depth - 1);
            // size-biasing drops the support by one, so a child reaching only
            // {0,1} would leave the result with zero mean
            if (evaluate(child, Tolerances{}).support_max() < 2)
                child = DistExpr{"pois", {}, {rng.next_real(0.5, 2.0)}};
            e.children = {child};
            break;
        }
        default:
            e.head = "lotn";
            e.children = {random_expr(rng, depth - 1)};
            e.numbers = {static_cast<double>(rng.next_int(1, 5))};
            break;
    }
    return e;
}

struct TempFile {
    std::filesystem::path path;

    explicit TempFile(const std::string& contents) {
        path = std::filesystem::temp_directory_path() /
               ("thinlaw_expr_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++) + ".txt");
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::filesystem::remove(path); }

    static int counter;
};

int TempFile::counter = 0;

}  // namespace

TEST_CASE("printing then parsing is the identity on expression trees") {
    SplitMix64 rng(2026);
    for (int i = 0; i < 200; ++i) {
        DistExpr e = random_expr(rng, 3);
        std::string text = print_expr(e);
        DistExpr back = parse_expr(text);
        CHECK(back == e);
        Pmf p = evaluate(back, Tolerances{});
        CHECK(p.mean() > 0.0);
    }
}

TEST_CASE("whitespace and argument order are tolerated, canonical on output") {
    DistExpr e = parse_expr("  thin( 0.5 , bin(2, 0.5) ) ");
    CHECK(print_expr(e) == "thin(bin(2,0.5),0.5)");
    CHECK(linf_diff(evaluate(e, Tolerances{}), evaluate("thin(bin(2,0.5),0.5)", Tolerances{})) ==
          0.0);
}

TEST_CASE("parse errors carry offset and expectation") {
    auto expect = [](const std::string& text, std::size_t off, const std::string& what) {
        try {
            parse_expr(text);
            FAIL("no error for ", text);
        } catch (const ParseError& e) {
            CHECK(e.offset == off);
            CHECK(e.expected == what);
        }
    };
    expect("bin(2)", 5, "2 numeric arguments for bin");
    expect("thin(bin(2,0.5))", 15, "1 distribution argument then 1 numeric argument for thin");
    expect("foo(1)", 0, "a known distribution or operator name");
    expect("", 0, "a distribution or operator name");
    expect("bin(2,0.5", 9, "')'");
    expect("bin(2,0.5) x", 11, "end of input");
    expect("bin 2", 4, "'('");
    expect("bin(,0.5)", 4, "a number or a nested expression");

    try {
        parse_expr("bin(2)");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()) ==
              "parse error at offset 5: expected 2 numeric arguments for bin");
    }
}

TEST_CASE("evaluation matches direct constructors") {
    Tolerances tol;
    CHECK(linf_diff(evaluate("bin(10,0.5)", tol), Pmf::binomial(10, 0.5)) == 0.0);
    CHECK(linf_diff(evaluate("thin(bin(10,0.5),0.2)", tol), Pmf::binomial(10, 0.1)) <= 1e-12);
    CHECK(linf_diff(evaluate("pow(bern(0.5),3)", tol), Pmf::binomial(3, 0.5)) <= 1e-15);
    CHECK(linf_diff(evaluate("lotn(bern(0.4),4)", tol), Pmf::binomial(4, 0.1)) <= 1e-12);
    CHECK(linf_diff(evaluate("sbias(bin(3,0.4))", tol), Pmf::binomial(2, 0.4)) <= 1e-15);
    CHECK(linf_diff(evaluate("conv(bern(0.5),bern(0.5))", tol), Pmf::binomial(2, 0.5)) <=
          1e-15);
    CHECK(linf_diff(evaluate("nb(1,0.3)", tol), Pmf::geometric(0.3, tol.tail_eps)) == 0.0);
    CHECK(linf_diff(evaluate("pmf(1,1,1,1)", tol), Pmf::from_weights({1, 1, 1, 1})) == 0.0);
    CHECK(linf_diff(evaluate("pois(2)", tol), Pmf::poisson(2.0, tol.tail_eps)) == 0.0);
}

TEST_CASE("evaluation failures name the offending subexpression") {
    Tolerances tol;
    auto message = [&tol](const std::string& text) {
        try {
            evaluate(text, tol);
            return std::string("no error");
        } catch (const DomainError& e) {
            return std::string(e.what());
        }
    };
    CHECK(message("bern(-0.5)").find("in bern(-0.5)") == 0);
    std::string nested = message("thin(bern(-0.5),0.5)");
    CHECK(nested.find("in bern(-0.5)") == 0);
    CHECK(nested.find("thin") == std::string::npos);
    CHECK(message("bin(2.5,0.5)").find("the trial count must be a nonnegative integer") !=
          std::string::npos);
    CHECK(message("thin(bin(2,0.5),1.5)").find("in thin(bin(2,0.5),1.5)") == 0);
    CHECK_THROWS_AS(evaluate("sbias(pmf(1,0))", tol), DomainError);
}

TEST_CASE("corpus files strip comments and report line numbers") {
    TempFile good(
        "# reference corpus\n"
        "\n"
        "bin(2, 0.5)   # the running example\n"
        "  geom(0.5)\n"
        "thin(pois(1.0), 0.25)\n");
    auto members = load_corpus_file(good.path.string(), Tolerances{});
    REQUIRE(members.size() == 3);
    CHECK(members[0].name == "bin(2,0.5)");
    CHECK(members[1].name == "geom(0.5)");
    CHECK(members[2].name == "thin(pois(1),0.25)");
    CHECK(members[0].pmf.mean() == doctest::Approx(1.0));

    TempFile bad("bin(2,0.5)\nbogus(1)\n");
    try {
        load_corpus_file(bad.path.string(), Tolerances{});
        FAIL("no error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("corpus file line 2") == 0);
    }

    TempFile empty("# nothing here\n\n");
    CHECK_THROWS_AS(load_corpus_file(empty.path.string(), Tolerances{}), DomainError);
    CHECK_THROWS_AS(load_corpus_file("/nonexistent/corpus.txt", Tolerances{}), DomainError);
}
