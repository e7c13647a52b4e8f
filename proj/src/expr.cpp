#include "einlike/expr.hpp"

#include "einlike/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>

namespace einlike {

namespace detail {

enum class NodeKind { number, coord, neg, add, sub, mul, div, pow, call };

struct ExprNode {
    NodeKind kind;
    double value = 0.0;       // number
    int coord = -1;           // coord
    Func fn = Func::sin;      // call
    NodePtr a, b;
};

namespace {

NodePtr make_number(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::number;
    n->value = v;
    return n;
}

NodePtr make_coord(int idx) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::coord;
    n->coord = idx;
    return n;
}

NodePtr make_unary(NodeKind kind, NodePtr a) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->a = std::move(a);
    return n;
}

NodePtr make_binary(NodeKind kind, NodePtr a, NodePtr b) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

NodePtr make_call(Func fn, NodePtr a) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::call;
    n->fn = fn;
    n->a = std::move(a);
    return n;
}

std::optional<Func> lookup_func(std::string_view name) {
    static const std::pair<std::string_view, Func> table[] = {
        {"sin", Func::sin},   {"cos", Func::cos},   {"tan", Func::tan},
        {"exp", Func::exp},   {"log", Func::log},   {"sinh", Func::sinh},
        {"cosh", Func::cosh}, {"tanh", Func::tanh}, {"sqrt", Func::sqrt},
    };
    for (const auto& [n, f] : table)
        if (n == name) return f;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Tokenizer / recursive-descent parser
// ---------------------------------------------------------------------------

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    std::size_t offset;
    std::string_view text;
    double value = 0.0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        tok_.offset = pos_;
        if (pos_ >= src_.size()) {
            tok_.kind = Tok::end;
            tok_.text = {};
            return;
        }
        const char c = src_[pos_];
        switch (c) {
            case '+': single(Tok::plus); return;
            case '-': single(Tok::minus); return;
            case '*': single(Tok::star); return;
            case '/': single(Tok::slash); return;
            case '^': single(Tok::caret); return;
            case '(': single(Tok::lparen); return;
            case ')': single(Tok::rparen); return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
                ++end;
            tok_.kind = Tok::ident;
            tok_.text = src_.substr(pos_, end - pos_);
            pos_ = end;
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    void single(Tok kind) {
        tok_.kind = kind;
        tok_.text = src_.substr(pos_, 1);
        ++pos_;
    }

    void lex_number() {
        std::size_t end = pos_;
        bool any_digit = false;
        while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) {
            ++end;
            any_digit = true;
        }
        if (end < src_.size() && src_[end] == '.') {
            ++end;
            while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) {
                ++end;
                any_digit = true;
            }
        }
        if (!any_digit) throw ParseError("malformed number literal", pos_);
        if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
            std::size_t exp = end + 1;
            if (exp < src_.size() && (src_[exp] == '+' || src_[exp] == '-')) ++exp;
            if (exp < src_.size() && std::isdigit(static_cast<unsigned char>(src_[exp]))) {
                ++exp;
                while (exp < src_.size() && std::isdigit(static_cast<unsigned char>(src_[exp]))) ++exp;
                end = exp;
            }
        }
        tok_.kind = Tok::number;
        tok_.text = src_.substr(pos_, end - pos_);
        tok_.value = std::strtod(std::string(tok_.text).c_str(), nullptr);
        pos_ = end;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token tok_{};
};

class Parser {
public:
    Parser(std::string_view src, std::span<const std::string> coords)
        : lex_(src), coords_(coords) {}

    NodePtr parse() {
        if (lex_.peek().kind == Tok::end) throw ParseError("empty input", 0);
        NodePtr e = expression();
        if (lex_.peek().kind != Tok::end)
            throw ParseError("unexpected trailing input", lex_.peek().offset);
        return e;
    }

private:
    NodePtr expression() {
        NodePtr lhs = term();
        while (true) {
            const Tok k = lex_.peek().kind;
            if (k == Tok::plus || k == Tok::minus) {
                lex_.take();
                NodePtr rhs = term();
                lhs = make_binary(k == Tok::plus ? NodeKind::add : NodeKind::sub, std::move(lhs),
                                  std::move(rhs));
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        while (true) {
            const Tok k = lex_.peek().kind;
            if (k == Tok::star || k == Tok::slash) {
                lex_.take();
                NodePtr rhs = unary();
                lhs = make_binary(k == Tok::star ? NodeKind::mul : NodeKind::div, std::move(lhs),
                                  std::move(rhs));
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        if (lex_.peek().kind == Tok::minus) {
            lex_.take();
            return make_unary(NodeKind::neg, unary());
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (lex_.peek().kind == Tok::caret) {
            lex_.take();
            return make_binary(NodeKind::pow, std::move(base), unary());
        }
        return base;
    }

    NodePtr primary() {
        const Token t = lex_.take();
        switch (t.kind) {
            case Tok::number:
                return make_number(t.value);
            case Tok::lparen: {
                NodePtr e = expression();
                expect(Tok::rparen, "expected ')'");
                return e;
            }
            case Tok::ident: {
                for (std::size_t i = 0; i < coords_.size(); ++i)
                    if (coords_[i] == t.text) return make_coord(static_cast<int>(i));
                if (auto fn = lookup_func(t.text)) {
                    expect(Tok::lparen, "expected '(' after function name");
                    NodePtr arg = expression();
                    expect(Tok::rparen, "expected ')'");
                    return make_call(*fn, std::move(arg));
                }
                throw ParseError("unknown identifier '" + std::string(t.text) + "'", t.offset);
            }
            default:
                throw ParseError("expected a number, coordinate, function call, or '('", t.offset);
        }
    }

    void expect(Tok kind, const char* message) {
        if (lex_.peek().kind != kind) throw ParseError(message, lex_.peek().offset);
        lex_.take();
    }

    Lexer lex_;
    std::span<const std::string> coords_;
};

// ---------------------------------------------------------------------------
// Serializer (minimal parentheses, reparsing is structurally exact)
// ---------------------------------------------------------------------------

int precedence(const ExprNode& n) {
    switch (n.kind) {
        case NodeKind::add:
        case NodeKind::sub: return 1;
        case NodeKind::mul:
        case NodeKind::div: return 2;
        case NodeKind::neg: return 3;
        case NodeKind::pow: return 4;
        default: return 5;
    }
}

void format_number(std::ostream& os, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
}

void print(std::ostream& os, const ExprNode& n, int min_prec, std::span<const std::string> coords) {
    const int prec = precedence(n);
    const bool parens = prec < min_prec;
    if (parens) os << '(';
    switch (n.kind) {
        case NodeKind::number: format_number(os, n.value); break;
        case NodeKind::coord: os << coords[static_cast<std::size_t>(n.coord)]; break;
        case NodeKind::neg:
            os << '-';
            print(os, *n.a, 3, coords);
            break;
        case NodeKind::add:
            print(os, *n.a, 1, coords);
            os << '+';
            print(os, *n.b, 2, coords);
            break;
        case NodeKind::sub:
            print(os, *n.a, 1, coords);
            os << '-';
            print(os, *n.b, 2, coords);
            break;
        case NodeKind::mul:
            print(os, *n.a, 2, coords);
            os << '*';
            print(os, *n.b, 3, coords);
            break;
        case NodeKind::div:
            print(os, *n.a, 2, coords);
            os << '/';
            print(os, *n.b, 3, coords);
            break;
        case NodeKind::pow:
            print(os, *n.a, 5, coords);
            os << '^';
            print(os, *n.b, 4, coords);
            break;
        case NodeKind::call:
            os << func_name(n.fn) << '(';
            print(os, *n.a, 0, coords);
            os << ')';
            break;
    }
    if (parens) os << ')';
}

// ---------------------------------------------------------------------------
// Evaluation over jets
// ---------------------------------------------------------------------------

struct EvalContext {
    std::span<const double> point;
    std::span<const std::string> coords;
    int order;
};

std::string point_desc(std::span<const double> point, std::span<const std::string> coords) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (i) os << ", ";
        os << coords[i] << '=';
        format_number(os, point[i]);
    }
    os << ')';
    return os.str();
}

std::string subexpr_text(const ExprNode& n, std::span<const std::string> coords) {
    std::ostringstream os;
    print(os, n, 0, coords);
    return os.str();
}

[[noreturn]] void eval_fail(const std::string& what, const ExprNode& n, const EvalContext& ctx) {
    throw DomainError(what, subexpr_text(n, ctx.coords), point_desc(ctx.point, ctx.coords));
}

// Syntactic integer-literal exponent: a plain literal or a negated literal
// holding an integral value. Anything else takes the general pow path.
std::optional<long long> integer_literal(const ExprNode& n) {
    const ExprNode* p = &n;
    bool negate = false;
    while (p->kind == NodeKind::neg) {
        negate = !negate;
        p = p->a.get();
    }
    if (p->kind != NodeKind::number) return std::nullopt;
    const double v = p->value;
    if (std::floor(v) != v || std::abs(v) > 1e9) return std::nullopt;
    const long long k = static_cast<long long>(v);
    return negate ? -k : k;
}

Jet eval_node(const ExprNode& n, const EvalContext& ctx) {
    const int dim = static_cast<int>(ctx.point.size());
    switch (n.kind) {
        case NodeKind::number: return Jet::constant(n.value, dim, ctx.order);
        case NodeKind::coord:
            return Jet::variable(n.coord, ctx.point[static_cast<std::size_t>(n.coord)], dim, ctx.order);
        case NodeKind::neg: return -eval_node(*n.a, ctx);
        case NodeKind::add: return eval_node(*n.a, ctx) + eval_node(*n.b, ctx);
        case NodeKind::sub: return eval_node(*n.a, ctx) - eval_node(*n.b, ctx);
        case NodeKind::mul: return eval_node(*n.a, ctx) * eval_node(*n.b, ctx);
        case NodeKind::div: {
            const Jet num = eval_node(*n.a, ctx);
            const Jet den = eval_node(*n.b, ctx);
            if (den.value() == 0.0) eval_fail("division by zero", n, ctx);
            return num / den;
        }
        case NodeKind::pow: {
            const Jet base = eval_node(*n.a, ctx);
            if (auto k = integer_literal(*n.b)) {
                if (*k < 0 && base.value() == 0.0)
                    eval_fail("zero base with negative exponent", n, ctx);
                return jet_pow_int(base, *k);
            }
            const Jet expo = eval_node(*n.b, ctx);
            if (base.value() <= 0.0)
                eval_fail("power with non-integer exponent requires positive base", n, ctx);
            return jet_compose(Func::exp, expo * jet_compose(Func::log, base));
        }
        case NodeKind::call: {
            const Jet arg = eval_node(*n.a, ctx);
            const double c0 = arg.value();
            switch (n.fn) {
                case Func::log:
                    if (c0 <= 0.0) eval_fail("log of non-positive value", n, ctx);
                    break;
                case Func::sqrt:
                    if (c0 <= 0.0) eval_fail("sqrt of non-positive value", n, ctx);
                    break;
                case Func::tan:
                    if (std::abs(std::cos(c0)) <= 1e-14) eval_fail("tan evaluated at a pole", n, ctx);
                    break;
                default: break;
            }
            return jet_compose(n.fn, arg);
        }
    }
    throw Error("corrupt expression node");
}

NodePtr remap_node(const ExprNode& n, std::span<const int> index_map) {
    switch (n.kind) {
        case NodeKind::number: return make_number(n.value);
        case NodeKind::coord: return make_coord(index_map[static_cast<std::size_t>(n.coord)]);
        case NodeKind::neg: return make_unary(NodeKind::neg, remap_node(*n.a, index_map));
        case NodeKind::call: return make_call(n.fn, remap_node(*n.a, index_map));
        default:
            return make_binary(n.kind, remap_node(*n.a, index_map), remap_node(*n.b, index_map));
    }
}

bool nodes_equal(const ExprNode& x, const ExprNode& y) {
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case NodeKind::number: return x.value == y.value;
        case NodeKind::coord: return x.coord == y.coord;
        case NodeKind::neg: return nodes_equal(*x.a, *y.a);
        case NodeKind::call: return x.fn == y.fn && nodes_equal(*x.a, *y.a);
        default: return nodes_equal(*x.a, *y.a) && nodes_equal(*x.b, *y.b);
    }
}

} // namespace
} // namespace detail

using detail::ExprNode;
using detail::NodeKind;

void validate_coord_names(std::span<const std::string> coord_names) {
    if (coord_names.empty()) throw InputError("coordinate list must be nonempty");
    for (std::size_t i = 0; i < coord_names.size(); ++i) {
        const std::string& name = coord_names[i];
        bool ok = !name.empty() &&
                  (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
        for (std::size_t k = 1; ok && k < name.size(); ++k)
            ok = std::isalnum(static_cast<unsigned char>(name[k])) || name[k] == '_';
        if (!ok) throw InputError("invalid coordinate name '" + name + "'");
        if (detail::lookup_func(name))
            throw InputError("coordinate name '" + name + "' collides with a function name");
        for (std::size_t j = i + 1; j < coord_names.size(); ++j)
            if (coord_names[j] == name)
                throw InputError("duplicate coordinate name '" + name + "'");
    }
}

ScalarExpr ScalarExpr::parse(std::string_view source, std::vector<std::string> coord_names) {
    validate_coord_names(coord_names);
    detail::Parser parser(source, coord_names);
    return ScalarExpr(parser.parse(), std::move(coord_names));
}

ScalarExpr ScalarExpr::number(double value, std::vector<std::string> coord_names) {
    validate_coord_names(coord_names);
    // keep literals non-negative so serialized text reparses to the same tree
    if (value < 0.0)
        return ScalarExpr(detail::make_unary(NodeKind::neg, detail::make_number(-value)),
                          std::move(coord_names));
    return ScalarExpr(detail::make_number(value), std::move(coord_names));
}

ScalarExpr ScalarExpr::coordinate(int index, std::vector<std::string> coord_names) {
    validate_coord_names(coord_names);
    if (index < 0 || index >= static_cast<int>(coord_names.size()))
        throw InputError("coordinate index out of range");
    return ScalarExpr(detail::make_coord(index), std::move(coord_names));
}

namespace {
void require_same_chart(const ScalarExpr& a, const ScalarExpr& b) {
    if (a.coord_names() != b.coord_names())
        throw Error("expression operands live on different coordinate charts");
}
} // namespace

ScalarExpr ScalarExpr::add(const ScalarExpr& a, const ScalarExpr& b) {
    require_same_chart(a, b);
    return ScalarExpr(detail::make_binary(NodeKind::add, a.root_, b.root_), a.coord_names_);
}

ScalarExpr ScalarExpr::sub(const ScalarExpr& a, const ScalarExpr& b) {
    require_same_chart(a, b);
    return ScalarExpr(detail::make_binary(NodeKind::sub, a.root_, b.root_), a.coord_names_);
}

ScalarExpr ScalarExpr::mul(const ScalarExpr& a, const ScalarExpr& b) {
    require_same_chart(a, b);
    return ScalarExpr(detail::make_binary(NodeKind::mul, a.root_, b.root_), a.coord_names_);
}

ScalarExpr ScalarExpr::div(const ScalarExpr& a, const ScalarExpr& b) {
    require_same_chart(a, b);
    return ScalarExpr(detail::make_binary(NodeKind::div, a.root_, b.root_), a.coord_names_);
}

ScalarExpr ScalarExpr::neg(const ScalarExpr& a) {
    return ScalarExpr(detail::make_unary(NodeKind::neg, a.root_), a.coord_names_);
}

ScalarExpr ScalarExpr::pow_int(const ScalarExpr& a, long long k) {
    return ScalarExpr(
        detail::make_binary(NodeKind::pow, a.root_, detail::make_number(static_cast<double>(k))),
        a.coord_names_);
}

ScalarExpr ScalarExpr::apply(Func fn, const ScalarExpr& a) {
    return ScalarExpr(detail::make_call(fn, a.root_), a.coord_names_);
}

std::string ScalarExpr::serialize() const {
    std::ostringstream os;
    detail::print(os, *root_, 0, coord_names_);
    return os.str();
}

bool ScalarExpr::structurally_equal(const ScalarExpr& other) const {
    return coord_names_ == other.coord_names_ && detail::nodes_equal(*root_, *other.root_);
}

ScalarExpr ScalarExpr::remapped(std::span<const int> index_map,
                                std::vector<std::string> new_names) const {
    validate_coord_names(new_names);
    if (index_map.size() != coord_names_.size())
        throw Error("remap index table does not match coordinate count");
    for (int idx : index_map)
        if (idx < 0 || idx >= static_cast<int>(new_names.size()))
            throw Error("remap target index out of range");
    return ScalarExpr(detail::remap_node(*root_, index_map), std::move(new_names));
}

double ScalarExpr::eval(std::span<const double> point) const {
    return eval_jet(point, 0).value();
}

Jet ScalarExpr::eval_jet(std::span<const double> point, int order) const {
    if (static_cast<int>(point.size()) != coord_count())
        throw Error("point length " + std::to_string(point.size()) +
                    " does not match coordinate count " + std::to_string(coord_count()));
    if (order < 0 || order > MultiIndexTable::kMaxOrder)
        throw Error("jet order must be in 0..3");
    detail::EvalContext ctx{point, coord_names_, order};
    Jet result = detail::eval_node(*root_, ctx);
    if (!result.all_finite())
        throw DomainError("non-finite result", serialize(), detail::point_desc(point, coord_names_));
    return result;
}

} // namespace einlike
