#include "ratode/expr.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace ratode {

ParseError::ParseError(const std::string& msg, int l, int c)
    : std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg), line(l), column(c) {}

namespace {

enum class Tok { Num, Ident, Op, LParen, RParen, Comma, End };

struct Token {
    Tok kind;
    std::string text;
    bool primed = false;
    int col = 0;
};

class Lexer {
public:
    Lexer(std::string_view s, int line, int offset) : s_(s), line_(line), off_(offset) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        std::size_t i = 0;
        while (i < s_.size()) {
            char ch = s_[i];
            int col = static_cast<int>(i) + 1 + off_;
            if (std::isspace(static_cast<unsigned char>(ch))) {
                ++i;
            } else if (std::isdigit(static_cast<unsigned char>(ch))) {
                std::size_t j = i;
                while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
                if (j < s_.size() && s_[j] == '.') throw ParseError("decimal numbers are not accepted; write a fraction", line_, col);
                out.push_back({Tok::Num, std::string(s_.substr(i, j - i)), false, col});
                i = j;
            } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
                std::size_t j = i;
                while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
                Token t{Tok::Ident, std::string(s_.substr(i, j - i)), false, col};
                if (j < s_.size() && s_[j] == '\'') {
                    t.primed = true;
                    ++j;
                }
                out.push_back(t);
                i = j;
            } else if (std::string_view("+-*/^").find(ch) != std::string_view::npos) {
                out.push_back({Tok::Op, std::string(1, ch), false, col});
                ++i;
            } else if (ch == '(') {
                out.push_back({Tok::LParen, "(", false, col});
                ++i;
            } else if (ch == ')') {
                out.push_back({Tok::RParen, ")", false, col});
                ++i;
            } else if (ch == ',') {
                out.push_back({Tok::Comma, ",", false, col});
                ++i;
            } else {
                throw ParseError(std::string("unexpected character '") + ch + "'", line_, col);
            }
        }
        out.push_back({Tok::End, "", false, static_cast<int>(s_.size()) + 1 + off_});
        return out;
    }

private:
    std::string_view s_;
    int line_, off_;
};

class Parser {
public:
    Parser(std::vector<Token> toks, const NameResolver& r, int line) : t_(std::move(toks)), resolve_(r), line_(line) {}

    RatFn expr() {
        RatFn acc = term();
        while (peek().kind == Tok::Op && (peek().text == "+" || peek().text == "-")) {
            bool plus = next().text == "+";
            RatFn rhs = term();
            acc = plus ? acc + rhs : acc - rhs;
        }
        return acc;
    }

    std::pair<RatFn, RatFn> pair() {
        expect(Tok::LParen, "'('");
        RatFn a = expr();
        expect(Tok::Comma, "','");
        RatFn b = expr();
        expect(Tok::RParen, "')'");
        return {a, b};
    }

    void finish() {
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    }

private:
    std::vector<Token> t_;
    std::size_t i_ = 0;
    const NameResolver& resolve_;
    int line_;

    const Token& peek() const { return t_[i_]; }
    const Token& next() { return t_[i_++]; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, peek().col); }
    void expect(Tok k, const char* what) {
        if (peek().kind != k) fail(std::string("expected ") + what);
        ++i_;
    }

    RatFn term() {
        RatFn acc = unary();
        while (true) {
            const Token& p = peek();
            if (p.kind == Tok::Op && (p.text == "*" || p.text == "/")) {
                bool mul = next().text == "*";
                int col = peek().col;
                RatFn rhs = unary();
                if (mul) {
                    acc *= rhs;
                } else {
                    if (rhs.is_zero()) throw ParseError("division by zero", line_, col);
                    acc /= rhs;
                }
            } else if (p.kind == Tok::Num || p.kind == Tok::Ident || p.kind == Tok::LParen) {
                fail("implicit multiplication; write '*'");
            } else {
                return acc;
            }
        }
    }

    RatFn unary() {
        if (peek().kind == Tok::Op && peek().text == "-") {
            next();
            return -unary();
        }
        if (peek().kind == Tok::Op && peek().text == "+") {
            next();
            return unary();
        }
        return power();
    }

    RatFn power() {
        RatFn base = atom();
        if (peek().kind == Tok::Op && peek().text == "^") {
            next();
            bool neg = false;
            if (peek().kind == Tok::Op && peek().text == "-") {
                next();
                neg = true;
            }
            if (peek().kind != Tok::Num) fail("exponent must be an integer");
            const Token& n = next();
            if (n.text.size() > 6) throw ParseError("exponent too large", line_, n.col);
            int e = std::stoi(n.text);
            if (neg && base.is_zero()) throw ParseError("zero to a negative power", line_, n.col);
            base = base.pow(neg ? -e : e);
            if (peek().kind == Tok::Op && peek().text == "^") fail("chained exponents need parentheses");
        }
        return base;
    }

    RatFn atom() {
        const Token& tk = peek();
        switch (tk.kind) {
        case Tok::Num:
            next();
            return RatFn(MPoly(Rat(BigInt(tk.text))));
        case Tok::Ident: {
            next();
            auto v = resolve_(tk.text, tk.primed);
            if (!v) throw ParseError("unknown name '" + tk.text + (tk.primed ? "'" : "") + "'", line_, tk.col);
            return *v;
        }
        case Tok::LParen: {
            next();
            RatFn r = expr();
            expect(Tok::RParen, "')'");
            return r;
        }
        default:
            fail(tk.kind == Tok::End ? "unexpected end of expression" : "unexpected '" + tk.text + "'");
        }
    }
};

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

bool valid_name(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

const std::set<std::string> kCommands{"solve-constant", "solve-functional", "decompose", "parametrize",
                                      "verify", "specialize", "oracle"};

struct RawLine {
    int line;
    std::string key;   // "F", "params", "rule", "param", "meaning", "command"
    std::string body;  // text after the key
    int body_col;      // 1-based column of body start
};

std::vector<RawLine> split_lines(const std::string& text) {
    std::vector<RawLine> out;
    std::istringstream in(text);
    std::string raw;
    int ln = 0;
    while (std::getline(in, raw)) {
        ++ln;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::string s = trim(raw);
        if (s.empty()) continue;
        std::size_t lead = raw.find_first_not_of(" \t");
        auto body_from = [&](std::size_t pos) {
            std::size_t p = pos;
            while (p < raw.size() && std::isspace(static_cast<unsigned char>(raw[p]))) ++p;
            return std::make_pair(raw.substr(p), static_cast<int>(p) + 1);
        };
        if (s.rfind("F", 0) == 0) {
            std::size_t p = lead + 1;
            while (p < raw.size() && std::isspace(static_cast<unsigned char>(raw[p]))) ++p;
            if (p < raw.size() && raw[p] == '=') {
                auto [b, c] = body_from(p + 1);
                out.push_back({ln, "F", b, c});
                continue;
            }
        }
        bool matched = false;
        for (const char* key : {"params", "rule", "param", "meaning"}) {
            std::string k = std::string(key) + ":";
            if (s.rfind(k, 0) == 0) {
                auto [b, c] = body_from(lead + k.size());
                out.push_back({ln, key, b, c});
                matched = true;
                break;
            }
        }
        if (matched) continue;
        if (kCommands.count(s)) {
            out.push_back({ln, "command", s, static_cast<int>(lead) + 1});
            continue;
        }
        throw ParseError("unrecognized line '" + s + "'", ln, static_cast<int>(lead) + 1);
    }
    return out;
}

RatFn parse_at(const std::string& body, const NameResolver& r, int line, int col) {
    Parser p(Lexer(body, line, col - 1).run(), r, line);
    RatFn v = p.expr();
    p.finish();
    return v;
}

std::pair<RatFn, RatFn> parse_pair_at(const std::string& body, const NameResolver& r, int line, int col) {
    Parser p(Lexer(body, line, col - 1).run(), r, line);
    auto v = p.pair();
    p.finish();
    return v;
}

// Resolver for expressions over the declared names of a problem.
NameResolver problem_resolver(const ProblemSpec& spec, bool allow_y, bool allow_t) {
    return [&spec, allow_y, allow_t](const std::string& name, bool primed) -> std::optional<RatFn> {
        if (name == "y" && allow_y) return RatFn::var(primed ? vars::z() : vars::y());
        if (name == "t" && allow_t && !primed) return RatFn::var(vars::t());
        auto v = Var::find(name);
        if (!v) return std::nullopt;
        auto role = spec.registry.role(*v);
        if (!role) return std::nullopt;
        if (*role == Role::ConstantParam && !primed) return RatFn::var(*v);
        if (*role == Role::FunctionalCoeff) {
            if (!primed) return RatFn::var(*v);
            for (auto& r : spec.functional_params)
                if (r.name == *v) return r.q;
        }
        return std::nullopt;
    };
}

} // namespace

RatFn parse_expr(std::string_view text, const NameResolver& resolve, int line, int column_offset) {
    Parser p(Lexer(text, line, column_offset).run(), resolve, line);
    RatFn v = p.expr();
    p.finish();
    return v;
}

RatFn parse_ratfn(std::string_view text) {
    return parse_expr(text, [](const std::string& name, bool primed) -> std::optional<RatFn> {
        if (primed) {
            if (name == "y") return RatFn::var(vars::z());
            return RatFn::var(Var::named(name + "'"));
        }
        return RatFn::var(Var::named(name));
    });
}

ProblemSpec parse_problem(const std::string& text) {
    ProblemSpec spec;
    auto lines = split_lines(text);

    // Declarations first so that F may precede the rules.
    for (auto& l : lines) {
        if (l.key == "params") {
            std::size_t pos = 0;
            std::string body = l.body;
            while (pos <= body.size()) {
                std::size_t comma = body.find(',', pos);
                if (comma == std::string::npos) comma = body.size();
                std::string name = trim(std::string_view(body).substr(pos, comma - pos));
                int col = l.body_col + static_cast<int>(pos);
                if (!valid_name(name)) throw ParseError("invalid parameter name '" + name + "'", l.line, col);
                if (is_reserved_name(name)) throw ParseError("'" + name + "' is reserved", l.line, col);
                Var v = Var::named(name);
                if (spec.registry.contains(v)) throw ParseError("'" + name + "' declared twice", l.line, col);
                spec.registry.add(v, Role::ConstantParam);
                spec.constant_params.push_back(v);
                pos = comma + 1;
            }
        } else if (l.key == "command") {
            if (!spec.query.empty()) throw ParseError("more than one command", l.line, l.body_col);
            spec.query = l.body;
        }
    }
    std::vector<std::pair<Var, const RawLine*>> rule_lines;
    for (auto& l : lines) {
        if (l.key != "rule") continue;
        auto eq = l.body.find('=');
        if (eq == std::string::npos) throw ParseError("rule needs '='", l.line, l.body_col);
        std::string lhs = trim(std::string_view(l.body).substr(0, eq));
        if (lhs.size() < 2 || lhs.back() != '\'') throw ParseError("rule must read name' = expression", l.line, l.body_col);
        std::string name = lhs.substr(0, lhs.size() - 1);
        if (!valid_name(name)) throw ParseError("invalid functional name '" + name + "'", l.line, l.body_col);
        if (is_reserved_name(name)) throw ParseError("'" + name + "' is reserved", l.line, l.body_col);
        Var v = Var::named(name);
        if (auto r = spec.registry.role(v)) {
            if (*r == Role::ConstantParam)
                throw ParseError("'" + name + "' is a constant parameter and cannot have a derivation rule", l.line, l.body_col);
            throw ParseError("'" + name + "' has two rules", l.line, l.body_col);
        }
        spec.registry.add(v, Role::FunctionalCoeff);
        rule_lines.emplace_back(v, &l);
    }
    for (auto& [v, l] : rule_lines) {
        auto eq = l->body.find('=');
        auto resolver = [&spec](const std::string& name, bool primed) -> std::optional<RatFn> {
            auto var = Var::find(name);
            if (!var || primed) return std::nullopt;
            if (spec.registry.contains(*var)) return RatFn::var(*var);
            return std::nullopt;
        };
        std::string rhs = l->body.substr(eq + 1);
        spec.functional_params.push_back({v, parse_at(rhs, resolver, l->line, l->body_col + static_cast<int>(eq) + 1)});
    }
    for (auto& l : lines) {
        if (l.key != "meaning") continue;
        auto eq = l.body.find('=');
        if (eq == std::string::npos) throw ParseError("meaning needs '='", l.line, l.body_col);
        std::string name = trim(std::string_view(l.body).substr(0, eq));
        auto v = Var::find(name);
        if (!v || spec.registry.role(*v) != Role::FunctionalCoeff)
            throw ParseError("meaning given for undeclared functional name '" + name + "'", l.line, l.body_col);
        spec.meanings[name] = trim(std::string_view(l.body).substr(eq + 1));
    }

    const RawLine* fline = nullptr;
    for (auto& l : lines) {
        if (l.key != "F") continue;
        if (fline) throw ParseError("F given twice", l.line, 1);
        fline = &l;
    }
    if (!fline) throw ParseError("missing 'F = ...' line", 1, 1);
    RatFn F = parse_at(fline->body, problem_resolver(spec, true, false), fline->line, fline->body_col);
    // A rational F is replaced by its numerator.
    spec.F = F.num();
    if (F.den().depends_on(vars::y()) || F.den().depends_on(vars::z()))
        throw ParseError("F must be polynomial in y and y'", fline->line, fline->body_col);
    if (!spec.F.depends_on(vars::z())) throw ParseError("F does not depend on y'", fline->line, fline->body_col);
    spec.registry.add(vars::y(), Role::CurveVar);
    spec.registry.add(vars::z(), Role::CurveVar);

    for (auto& l : lines) {
        if (l.key != "param") continue;
        auto [p1, p2] = parse_pair_at(l.body, problem_resolver(spec, false, true), l.line, l.body_col);
        spec.user_parametrizations.push_back({p1, p2, l.line});
    }
    return spec;
}

std::vector<UserParametrization> parse_param_file(const std::string& text, const ProblemSpec& spec) {
    std::vector<UserParametrization> out;
    for (auto& l : split_lines(text)) {
        if (l.key != "param") throw ParseError("parameter files may only contain 'param:' lines", l.line, 1);
        auto [p1, p2] = parse_pair_at(l.body, problem_resolver(spec, false, true), l.line, l.body_col);
        out.push_back({p1, p2, l.line});
    }
    return out;
}

namespace {

// Coefficient-like symbols print before the solution and curve variables,
// so a term reads a1*x or c*f^2.
bool prints_last(Var v) {
    static const Var last[] = {vars::x(), vars::t(), vars::s(), vars::wp(), vars::w(), vars::y(), vars::z()};
    return std::find(std::begin(last), std::end(last), v) != std::end(last);
}

std::string monomial_text(const Monomial& m, const std::map<Var, std::string>* names) {
    std::vector<std::pair<Var, unsigned>> order;
    for (auto& [id, e] : m.entries()) order.emplace_back(Var::from_id(id), e);
    std::stable_partition(order.begin(), order.end(), [](auto& ve) { return !prints_last(ve.first); });
    std::string s;
    for (auto& [v, e] : order) {
        if (!s.empty()) s += "*";
        std::string n = v.name();
        if (names) {
            if (auto it = names->find(v); it != names->end()) n = it->second;
        }
        s += n;
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

std::string render_poly(const MPoly& p, const std::map<Var, std::string>* names) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& term : p.terms()) {
        bool neg = term.c < 0;
        BigInt num = abs(term.c.get_num());
        const BigInt& den = term.c.get_den();
        std::string ms = monomial_text(term.m, names);
        std::string body;
        if (ms.empty()) {
            body = num.get_str();
        } else {
            body = (num == 1) ? ms : num.get_str() + "*" + ms;
        }
        if (den != 1) body += "/" + den.get_str();
        if (first) out += neg ? "-" + body : body;
        else out += (neg ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

bool is_atomic(const MPoly& p) {
    if (p.size() != 1) return false;
    const auto& term = p.terms().front();
    if (term.m.is_one()) return term.c > 0 && term.c.get_den() == 1;
    return term.c == 1 && term.m.entries().size() == 1;
}

} // namespace

std::string render(const MPoly& p) { return render_poly(p, nullptr); }

std::string render(const RatFn& r) {
    if (r.is_polynomial()) return render_poly(r.num() * (Rat(1) / r.den().constant_value()), nullptr);
    // Clear the numerator's denominators so both parts print with integers.
    BigInt l = 1;
    for (auto& term : r.num().terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), term.c.get_den_mpz_t());
    MPoly n = r.num() * Rat(l), d = r.den() * Rat(l);
    std::string ns = render_poly(n, nullptr), ds = render_poly(d, nullptr);
    if (n.size() > 1) ns = "(" + ns + ")";
    if (!is_atomic(d)) ds = "(" + ds + ")";
    return ns + "/" + ds;
}

std::string render_pair(const RatFn& a, const RatFn& b) { return "(" + render(a) + ", " + render(b) + ")"; }

std::string render_ode(const MPoly& F) {
    std::map<Var, std::string> names{{vars::z(), "y'"}};
    return render_poly(F, &names);
}

} // namespace ratode
