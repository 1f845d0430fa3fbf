#pragma once

#include <string>
#include <vector>

#include "thinlaw/errors.hpp"
#include "thinlaw/harness.hpp"
#include "thinlaw/pmf.hpp"

namespace thinlaw {

// Distribution expressions: IDENT '(' arg {',' arg} ')' where each arg is a
// number or a nested expression. Families bin, pois, geom, nb, bern, pmf;
// operators thin, conv, pow, sbias, lotn. For operators taking both a child
// expression and a number the child comes first.
struct DistExpr {
    std::string head;
    std::vector<DistExpr> children;
    std::vector<double> numbers;

    bool operator==(const DistExpr&) const = default;
};

DistExpr parse_expr(const std::string& text);

std::string print_expr(const DistExpr& e);

Pmf evaluate(const DistExpr& e, const Tolerances& tol = {});

Pmf evaluate(const std::string& text, const Tolerances& tol = {});

// One expression per line; '#' starts a comment; blank lines ignored.
std::vector<CorpusMember> load_corpus_file(const std::string& path,
                                           const Tolerances& tol = {});

}  // namespace thinlaw
