#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "thinlaw/expr.hpp"
#include "thinlaw/format.hpp"
#include "thinlaw/harness.hpp"
#include "thinlaw/info.hpp"
#include "thinlaw/orders.hpp"

namespace {

using nlohmann::ordered_json;
using namespace thinlaw;

struct OutputOpts {
    std::string format = "csv";
    int precision = 9;
};

void add_output_opts(CLI::App* cmd, OutputOpts& opts) {
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--precision", opts.precision, "significant digits")
        ->check(CLI::Range(1, 17))
        ->capture_default_str();
}

ordered_json json_num(double v, int precision) {
    if (std::isinf(v) || std::isnan(v)) return fmt_shortest(v);
    return std::strtod(fmt_digits(v, precision).c_str(), nullptr);
}

void emit_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << csv_escape(cells[i]);
    }
    os << '\n';
}

int cmd_eval(const std::string& expr_text, const OutputOpts& opts) {
    Pmf f = evaluate(expr_text);
    struct Field {
        const char* name;
        ordered_json value;
        std::string text;
    };
    auto num = [&](double v) { return fmt_digits(v, opts.precision); };
    std::vector<Field> fields;
    fields.push_back({"mean", json_num(f.mean(), opts.precision), num(f.mean())});
    fields.push_back({"variance", json_num(f.variance(), opts.precision), num(f.variance())});
    fields.push_back({"entropy", json_num(entropy(f), opts.precision), num(entropy(f))});
    fields.push_back({"d_poisson", json_num(d_poisson(f), opts.precision), num(d_poisson(f))});
    fields.push_back({"scaled_fisher", json_num(scaled_fisher(f), opts.precision),
                      num(scaled_fisher(f))});
    bool ulc = is_ulc(f).holds;
    bool lc = is_log_concave(f).holds;
    fields.push_back({"is_ulc", ulc, ulc ? "true" : "false"});
    fields.push_back({"is_log_concave", lc, lc ? "true" : "false"});
    fields.push_back({"support_max", static_cast<std::int64_t>(f.support_max()),
                      std::to_string(f.support_max())});
    if (opts.format == "json") {
        ordered_json j;
        for (const auto& fl : fields) j[fl.name] = fl.value;
        std::cout << j.dump() << '\n';
    } else {
        std::vector<std::string> header, row;
        for (const auto& fl : fields) {
            header.push_back(fl.name);
            row.push_back(fl.text);
        }
        emit_csv_row(std::cout, header);
        emit_csv_row(std::cout, row);
    }
    return 0;
}

int cmd_sweep(const std::string& expr_text, std::int64_t n_max,
              const std::vector<std::string>& columns, const OutputOpts& opts) {
    Pmf f = evaluate(expr_text);
    SequenceTable t = sequences(f, n_max, columns);
    if (opts.format == "json") {
        ordered_json j;
        j["n"] = t.n_values;
        for (std::size_t c = 0; c < t.column_names.size(); ++c) {
            ordered_json col = ordered_json::array();
            for (double v : t.columns[c]) col.push_back(json_num(v, opts.precision));
            j[t.column_names[c]] = col;
        }
        std::cout << j.dump() << '\n';
    } else {
        std::vector<std::string> header{"n"};
        header.insert(header.end(), t.column_names.begin(), t.column_names.end());
        emit_csv_row(std::cout, header);
        for (std::size_t i = 0; i < t.n_values.size(); ++i) {
            std::vector<std::string> row{std::to_string(t.n_values[i])};
            for (std::size_t c = 0; c < t.column_names.size(); ++c)
                row.push_back(fmt_digits(t.columns[c][i], opts.precision));
            emit_csv_row(std::cout, row);
        }
    }
    return 0;
}

int cmd_verify(const std::vector<std::string>& suites, const std::string& corpus_path,
               bool strict, const OutputOpts& opts) {
    std::vector<CorpusMember> corpus =
        corpus_path.empty() ? builtin_corpus() : load_corpus_file(corpus_path);
    std::vector<SuiteRow> rows;
    for (const auto& s : suites) {
        auto part = run_suite(s, corpus, Tolerances{});
        rows.insert(rows.end(), part.begin(), part.end());
    }
    std::size_t pass = 0, fail = 0, skip = 0;
    for (const auto& r : rows) {
        if (r.status == "pass") ++pass;
        else if (r.status == "fail") ++fail;
        else ++skip;
    }
    if (opts.format == "json") {
        ordered_json j;
        ordered_json suite = ordered_json::array(), name = ordered_json::array(),
                     lhs = ordered_json::array(), rhs = ordered_json::array(),
                     slack = ordered_json::array(), status = ordered_json::array(),
                     note = ordered_json::array();
        for (const auto& r : rows) {
            suite.push_back(r.suite);
            name.push_back(r.name);
            lhs.push_back(json_num(r.lhs, opts.precision));
            rhs.push_back(json_num(r.rhs, opts.precision));
            slack.push_back(json_num(r.slack, opts.precision));
            status.push_back(r.status);
            note.push_back(r.note);
        }
        j["suite"] = suite;
        j["name"] = name;
        j["lhs"] = lhs;
        j["rhs"] = rhs;
        j["slack"] = slack;
        j["status"] = status;
        j["note"] = note;
        std::cout << j.dump() << '\n';
    } else {
        emit_csv_row(std::cout, {"suite", "name", "lhs", "rhs", "slack", "status", "note"});
        for (const auto& r : rows)
            emit_csv_row(std::cout,
                         {r.suite, r.name, fmt_digits(r.lhs, opts.precision),
                          fmt_digits(r.rhs, opts.precision),
                          fmt_digits(r.slack, opts.precision), r.status, r.note});
    }
    std::cerr << "verify: suites=" << suites.size() << " checks=" << rows.size()
              << " pass=" << pass << " fail=" << fail << " skip=" << skip << '\n';
    if (fail > 0 || (strict && skip > 0)) return 1;
    return 0;
}

int cmd_conjecture(const std::string& family, double lambda, std::int64_t n_max, int order,
                   const OutputOpts& opts) {
    if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
    std::int64_t n_start = 1;
    if (family == "bin")
        n_start = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(lambda)));
    if (n_max < n_start + order)
        throw DomainError("n-max too small for the requested difference order");
    std::vector<double> s;
    for (std::int64_t n = n_start; n <= n_max; ++n) {
        Pmf f = family == "bin"
                    ? Pmf::binomial(n, lambda / static_cast<double>(n))
                    : Pmf::negative_binomial(static_cast<double>(n),
                                             static_cast<double>(n) / (lambda + static_cast<double>(n)));
        s.push_back(d_poisson(f));
    }
    FiniteDiffTable t = complete_monotonicity(s, order);
    std::size_t violations = 0;
    if (opts.format == "json") {
        ordered_json j;
        ordered_json kcol = ordered_json::array(), ncol = ordered_json::array(),
                     vcol = ordered_json::array(), okcol = ordered_json::array(),
                     floorcol = ordered_json::array();
        for (std::size_t k = 0; k < t.diffs.size(); ++k) {
            for (std::size_t i = 0; i < t.diffs[k].size(); ++i) {
                kcol.push_back(k);
                ncol.push_back(n_start + static_cast<std::int64_t>(i));
                vcol.push_back(json_num(t.diffs[k][i], opts.precision));
                okcol.push_back(static_cast<bool>(t.sign_ok[k][i]));
                floorcol.push_back(json_num(t.noise_floor[k], opts.precision));
                if (!t.sign_ok[k][i]) ++violations;
            }
        }
        j["k"] = kcol;
        j["n"] = ncol;
        j["value"] = vcol;
        j["sign_ok"] = okcol;
        j["noise_floor"] = floorcol;
        std::cout << j.dump() << '\n';
    } else {
        emit_csv_row(std::cout, {"k", "n", "value", "sign_ok", "noise_floor"});
        for (std::size_t k = 0; k < t.diffs.size(); ++k) {
            for (std::size_t i = 0; i < t.diffs[k].size(); ++i) {
                if (!t.sign_ok[k][i]) ++violations;
                emit_csv_row(std::cout,
                             {std::to_string(k),
                              std::to_string(n_start + static_cast<std::int64_t>(i)),
                              fmt_digits(t.diffs[k][i], opts.precision),
                              t.sign_ok[k][i] ? "true" : "false",
                              fmt_digits(t.noise_floor[k], opts.precision)});
            }
        }
    }
    std::cerr << "conjecture: family=" << family << " lambda=" << fmt_shortest(lambda)
              << " violations=" << violations << '\n';
    return violations == 0 ? 0 : 1;
}

int run(int argc, char** argv) {
    CLI::App app{"exact diagnostics for thinned and convolved counting distributions"};
    app.require_subcommand(1);

    OutputOpts eval_opts, sweep_opts, verify_opts, conj_opts;

    auto* eval_cmd = app.add_subcommand("eval", "summarize a distribution expression");
    std::string eval_expr;
    eval_cmd->add_option("expr", eval_expr, "distribution expression")->required();
    add_output_opts(eval_cmd, eval_opts);

    auto* sweep_cmd = app.add_subcommand("sweep", "tabulate sequences against n");
    std::string sweep_expr;
    std::int64_t sweep_n_max = 10;
    std::string sweep_columns = "d,t,r,h";
    bool figure1 = false;
    sweep_cmd->add_option("expr", sweep_expr, "distribution expression");
    sweep_cmd->add_option("--n-max", sweep_n_max, "largest n")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--columns", sweep_columns, "comma-separated column list")
        ->capture_default_str();
    sweep_cmd->add_flag("--figure1", figure1, "preset: bin(2,0.5), n=10, columns d,t,r,h");
    add_output_opts(sweep_cmd, sweep_opts);

    auto* verify_cmd = app.add_subcommand("verify", "run theorem check suites");
    std::vector<std::string> suites;
    std::string corpus_path;
    bool strict = false;
    verify_cmd->add_option("--suite", suites, "suite name (repeatable)")
        ->check(CLI::IsMember(suite_names()));
    verify_cmd->add_option("--corpus", corpus_path, "corpus file, one expression per line");
    verify_cmd->add_flag("--strict", strict, "treat skipped checks as failures");
    add_output_opts(verify_cmd, verify_opts);

    auto* conj_cmd = app.add_subcommand("conjecture", "finite differences of n -> D(family_n)");
    std::string family;
    double lambda = 1.0;
    std::int64_t conj_n_max = 30;
    int order = 4;
    conj_cmd->add_option("--family", family, "bin or nb")
        ->required()
        ->check(CLI::IsMember({"bin", "nb"}));
    conj_cmd->add_option("--lambda", lambda, "mean of every member")->required();
    conj_cmd->add_option("--n-max", conj_n_max, "largest n")->check(CLI::PositiveNumber);
    conj_cmd->add_option("--K", order, "highest difference order")->check(CLI::Range(0, 6));
    add_output_opts(conj_cmd, conj_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (eval_cmd->parsed()) return cmd_eval(eval_expr, eval_opts);
    if (sweep_cmd->parsed()) {
        if (figure1) {
            sweep_expr = "bin(2,0.5)";
            sweep_n_max = 10;
            sweep_columns = "d,t,r,h";
        } else if (sweep_expr.empty()) {
            throw DomainError("sweep requires an expression or --figure1");
        }
        std::vector<std::string> cols;
        std::size_t start = 0;
        while (start <= sweep_columns.size()) {
            auto comma = sweep_columns.find(',', start);
            if (comma == std::string::npos) comma = sweep_columns.size();
            if (comma > start) cols.push_back(sweep_columns.substr(start, comma - start));
            start = comma + 1;
        }
        return cmd_sweep(sweep_expr, sweep_n_max, cols, sweep_opts);
    }
    if (verify_cmd->parsed()) {
        if (suites.empty()) suites = suite_names();
        return cmd_verify(suites, corpus_path, strict, verify_opts);
    }
    if (conj_cmd->parsed()) return cmd_conjecture(family, lambda, conj_n_max, order, conj_opts);
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const thinlaw::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
