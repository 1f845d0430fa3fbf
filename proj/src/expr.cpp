#include "thinlaw/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>

#include "thinlaw/format.hpp"
#include "thinlaw/info.hpp"
#include "thinlaw/orders.hpp"
#include "thinlaw/transforms.hpp"

namespace thinlaw {

namespace {

struct HeadSpec {
    const char* name;
    int children;
    int numbers;       // -1 means one or more
};

constexpr HeadSpec kHeads[] = {
    {"bin", 0, 2},  {"pois", 0, 1}, {"geom", 0, 1}, {"nb", 0, 2},   {"bern", 0, 1},
    {"pmf", 0, -1}, {"thin", 1, 1}, {"conv", 2, 0}, {"pow", 1, 1},  {"sbias", 1, 0},
    {"lotn", 1, 1},
};

const HeadSpec* find_head(const std::string& name) {
    for (const auto& h : kHeads)
        if (name == h.name) return &h;
    return nullptr;
}

std::string arity_text(const HeadSpec& h) {
    std::string out;
    auto plural = [](int n, const char* noun) {
        return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
    };
    if (h.children > 0) out += plural(h.children, "distribution argument");
    if (h.numbers != 0) {
        if (!out.empty()) out += " then ";
        out += h.numbers < 0 ? "one or more numeric arguments" : plural(h.numbers, "numeric argument");
    }
    return out + " for " + h.name;
}

class Parser {
  public:
    explicit Parser(const std::string& text) : text_(text) {}

    DistExpr parse() {
        DistExpr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail(pos_, "end of input");
        return e;
    }

  private:
    const std::string& text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(std::size_t at, const std::string& expected) {
        throw ParseError(at, expected);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    DistExpr parse_expr() {
        skip_ws();
        std::size_t start = pos_;
        if (!std::isalpha(static_cast<unsigned char>(peek())) && peek() != '_')
            fail(pos_, "a distribution or operator name");
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name = text_.substr(start, pos_ - start);
        const HeadSpec* spec = find_head(name);
        if (!spec) fail(start, "a known distribution or operator name");
        skip_ws();
        if (peek() != '(') fail(pos_, "'('");
        ++pos_;
        DistExpr e;
        e.head = name;
        while (true) {
            skip_ws();
            char c = peek();
            if (c == ')') break;
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                e.children.push_back(parse_expr());
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' ||
                       c == '.') {
                e.numbers.push_back(parse_number());
            } else {
                fail(pos_, "a number or a nested expression");
            }
            skip_ws();
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            break;
        }
        if (peek() != ')') fail(pos_, "')'");
        check_arity(e, *spec, pos_);
        ++pos_;
        return e;
    }

    double parse_number() {
        std::size_t start = pos_;
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        double value = 0.0;
        auto res = std::from_chars(begin, end, value);
        if (res.ec != std::errc()) fail(start, "a number");
        pos_ = static_cast<std::size_t>(res.ptr - text_.data());
        return value;
    }

    void check_arity(const DistExpr& e, const HeadSpec& spec, std::size_t at) {
        bool numbers_ok = spec.numbers < 0 ? !e.numbers.empty()
                                           : e.numbers.size() == static_cast<std::size_t>(spec.numbers);
        bool children_ok = e.children.size() == static_cast<std::size_t>(spec.children);
        if (!numbers_ok || !children_ok) fail(at, arity_text(spec));
    }
};

std::int64_t require_count(const DistExpr& e, double v, const char* what) {
    double r = std::round(v);
    if (!(std::abs(v - r) <= 1e-9) || r < 0 || r > 1e12)
        throw DomainError("in " + print_expr(e) + ": " + what + " must be a nonnegative integer");
    return static_cast<std::int64_t>(r);
}

}  // namespace

DistExpr parse_expr(const std::string& text) { return Parser(text).parse(); }

std::string print_expr(const DistExpr& e) {
    std::string out = e.head + "(";
    bool first = true;
    for (const auto& c : e.children) {
        if (!first) out += ",";
        out += print_expr(c);
        first = false;
    }
    for (double v : e.numbers) {
        if (!first) out += ",";
        out += fmt_shortest(v);
        first = false;
    }
    return out + ")";
}

Pmf evaluate(const DistExpr& e, const Tolerances& tol) {
    std::vector<Pmf> kids;
    kids.reserve(e.children.size());
    for (const auto& c : e.children) kids.push_back(evaluate(c, tol));
    try {
        if (e.head == "bin")
            return Pmf::binomial(require_count(e, e.numbers[0], "the trial count"),
                                 e.numbers[1]);
        if (e.head == "pois") return Pmf::poisson(e.numbers[0], tol.tail_eps);
        if (e.head == "geom") return Pmf::geometric(e.numbers[0], tol.tail_eps);
        if (e.head == "nb")
            return Pmf::negative_binomial(e.numbers[0], e.numbers[1], tol.tail_eps);
        if (e.head == "bern") return Pmf::bernoulli(e.numbers[0]);
        if (e.head == "pmf") return Pmf::from_weights(e.numbers);
        if (e.head == "thin") return thin(kids[0], e.numbers[0]);
        if (e.head == "conv") return convolve(kids[0], kids[1]);
        if (e.head == "pow") {
            auto n = require_count(e, e.numbers[0], "the power");
            return self_convolve(kids[0], static_cast<std::uint64_t>(n));
        }
        if (e.head == "sbias") return size_bias(kids[0]);
        if (e.head == "lotn") {
            auto n = require_count(e, e.numbers[0], "the sample count");
            return law_of_thin_numbers(kids[0], static_cast<std::uint64_t>(n));
        }
    } catch (const DomainError& err) {
        std::string msg = err.what();
        if (msg.rfind("in ", 0) == 0) throw;
        throw DomainError("in " + print_expr(e) + ": " + msg);
    } catch (const Error& err) {
        throw DomainError("in " + print_expr(e) + ": " + err.what());
    }
    throw DomainError("unknown expression head: " + e.head);
}

Pmf evaluate(const std::string& text, const Tolerances& tol) {
    return evaluate(parse_expr(text), tol);
}

std::vector<CorpusMember> load_corpus_file(const std::string& path, const Tolerances& tol) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open corpus file: " + path);
    std::vector<CorpusMember> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        std::string text = line.substr(first, last - first + 1);
        try {
            DistExpr e = parse_expr(text);
            out.push_back({print_expr(e), evaluate(e, tol)});
        } catch (const Error& err) {
            throw DomainError("corpus file line " + std::to_string(lineno) + ": " + err.what());
        }
    }
    if (out.empty()) throw DomainError("corpus file has no expressions: " + path);
    return out;
}

}  // namespace thinlaw
