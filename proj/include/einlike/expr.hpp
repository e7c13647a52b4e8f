#pragma once

#include "einlike/jet.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace einlike {

namespace detail {
struct ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;
}

/// A parsed closed-form expression over named chart coordinates.
///
/// Grammar (whitespace insignificant, radians everywhere):
///   expression := term (('+' | '-') term)*          left-associative
///   term       := unary (('*' | '/') unary)*        left-associative
///   unary      := '-' unary | power
///   power      := primary ('^' unary)?              right-associative
///   primary    := number | coordinate | function '(' expression ')' | '(' expression ')'
/// Functions: sin cos tan exp log sinh cosh tanh sqrt. No implicit
/// multiplication; number literals are decimal with optional exponent.
///
/// Immutable after parse; evaluation is pure and thread-safe.
class ScalarExpr {
public:
    static ScalarExpr parse(std::string_view source, std::vector<std::string> coord_names);

    // Programmatic constructors (used when assembling product metrics).
    static ScalarExpr number(double value, std::vector<std::string> coord_names);
    static ScalarExpr coordinate(int index, std::vector<std::string> coord_names);
    static ScalarExpr add(const ScalarExpr& a, const ScalarExpr& b);
    static ScalarExpr sub(const ScalarExpr& a, const ScalarExpr& b);
    static ScalarExpr mul(const ScalarExpr& a, const ScalarExpr& b);
    static ScalarExpr div(const ScalarExpr& a, const ScalarExpr& b);
    static ScalarExpr neg(const ScalarExpr& a);
    static ScalarExpr pow_int(const ScalarExpr& a, long long k);
    static ScalarExpr apply(Func fn, const ScalarExpr& a);

    const std::vector<std::string>& coord_names() const { return coord_names_; }
    int coord_count() const { return static_cast<int>(coord_names_.size()); }

    /// Parseable text form; parse(serialize()) is structurally identical.
    std::string serialize() const;

    bool structurally_equal(const ScalarExpr& other) const;

    /// Rebuild the expression over a new coordinate list; index_map[i] is the
    /// new index of old coordinate i.
    ScalarExpr remapped(std::span<const int> index_map, std::vector<std::string> new_names) const;

    double eval(std::span<const double> point) const;
    Jet eval_jet(std::span<const double> point, int order) const;

private:
    ScalarExpr(detail::NodePtr root, std::vector<std::string> coord_names)
        : root_(std::move(root)), coord_names_(std::move(coord_names)) {}

    detail::NodePtr root_;
    std::vector<std::string> coord_names_;
};

/// Validate a chart coordinate list: nonempty, distinct identifiers matching
/// [A-Za-z_][A-Za-z0-9_]*, none colliding with a function name.
void validate_coord_names(std::span<const std::string> coord_names);

} // namespace einlike
