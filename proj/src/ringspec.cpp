#include "tamelift/ringspec.hpp"

#include <cctype>
#include <sstream>

namespace tamelift {

namespace {

struct Lexer {
    std::string s;
    size_t pos = 0;

    explicit Lexer(std::string text) : s(std::move(text)) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            throw RingSpecError(std::string("expected '") + c + "' near position " +
                                std::to_string(pos) + " in: " + s);
    }
    bool peek_name() {
        skip_ws();
        return pos < s.size() && (std::isalpha((unsigned char)s[pos]) || s[pos] == '_');
    }
    bool peek_int() {
        skip_ws();
        return pos < s.size() && std::isdigit((unsigned char)s[pos]);
    }
    std::string name() {
        skip_ws();
        if (!peek_name()) throw RingSpecError("expected a name near: " + s.substr(pos));
        size_t start = pos;
        while (pos < s.size() && (std::isalnum((unsigned char)s[pos]) || s[pos] == '_')) ++pos;
        return s.substr(start, pos - start);
    }
    uint64_t integer() {
        skip_ws();
        if (!peek_int()) throw RingSpecError("expected an integer near: " + s.substr(pos));
        uint64_t v = 0;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos]))
            v = v * 10 + uint64_t(s[pos++] - '0');
        return v;
    }
};

std::vector<std::string> split_sections(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ';') {
            out.push_back(cur);
            cur.clear();
        } else
            cur += c;
    }
    out.push_back(cur);
    return out;
}

bool blank(const std::string& t) {
    for (char c : t)
        if (!std::isspace((unsigned char)c)) return false;
    return true;
}

// t-polynomial with nonnegative integer coefficients: "t^2+1", "2*t+1", "3"
std::vector<uint64_t> parse_tpoly(Lexer& lx) {
    std::vector<uint64_t> coeffs;
    auto put = [&](size_t deg, uint64_t c) {
        if (coeffs.size() <= deg) coeffs.resize(deg + 1, 0);
        coeffs[deg] += c;
    };
    for (;;) {
        uint64_t c = 1;
        bool have_c = false;
        if (lx.peek_int()) {
            c = lx.integer();
            have_c = true;
            lx.accept('*');
        }
        if (lx.peek_name()) {
            std::string n = lx.name();
            if (n != "t") throw RingSpecError("unexpected name in modulus: " + n);
            uint64_t deg = 1;
            if (lx.accept('^')) deg = lx.integer();
            put(size_t(deg), c);
        } else if (have_c) {
            put(0, c);
        } else {
            throw RingSpecError("empty modulus term");
        }
        if (!lx.accept('+')) break;
    }
    return coeffs;
}

struct RelItem {
    bool is_rewrite = false;
    unsigned a = 0;
    std::vector<std::pair<std::string, unsigned>> vars;  // (name, exponent)
};

RelItem parse_rel_item(Lexer& lx) {
    RelItem item;
    bool first = true;
    for (;;) {
        if (!lx.peek_name()) throw RingSpecError("expected a monomial factor");
        std::string n = lx.name();
        unsigned e = 1;
        if (lx.accept('^')) e = unsigned(lx.integer());
        if (n == "p")
            item.a += e;
        else
            item.vars.emplace_back(n, e);
        if (first && n == "p" && e == 1 && lx.peek() == '-') {
            lx.expect('-');
            // rewrite identification p = <variable monomial>
            item.is_rewrite = true;
            item.a = 0;
            for (;;) {
                std::string vn = lx.name();
                unsigned ve = 1;
                if (lx.accept('^')) ve = unsigned(lx.integer());
                if (vn == "p") throw RingSpecError("rewrite right side must be variable-only");
                item.vars.emplace_back(vn, ve);
                if (!lx.accept('*')) break;
            }
            return item;
        }
        first = false;
        if (!lx.accept('*')) break;
    }
    return item;
}

}  // namespace

RingPtr parse_ring_spec(const std::string& text) {
    std::optional<uint64_t> p;
    unsigned f = 1, N = 0;
    std::optional<std::vector<uint64_t>> modulus;
    std::vector<std::string> vars;
    std::vector<RelItem> rels;
    bool saw_base = false;

    for (const auto& sec : split_sections(text)) {
        if (blank(sec)) continue;
        Lexer lx(sec);
        std::string head = lx.name();
        if (head == "base" || head == "witt") {
            if (head == "base") {
                lx.expect('=');
                if (lx.name() != "witt") throw RingSpecError("expected witt(...) after base =");
            }
            lx.expect('(');
            p = lx.integer();
            lx.expect(',');
            f = unsigned(lx.integer());
            lx.expect(',');
            N = unsigned(lx.integer());
            if (lx.accept(',')) modulus = parse_tpoly(lx);
            lx.expect(')');
            saw_base = true;
        } else if (head == "vars") {
            lx.accept('=');
            bool bracket = lx.accept('[');
            if (!(bracket && lx.accept(']'))) {
                if (lx.peek_name()) {
                    for (;;) {
                        vars.push_back(lx.name());
                        if (!lx.accept(',')) break;
                    }
                }
                if (bracket) lx.expect(']');
            }
        } else if (head == "rel") {
            lx.accept('=');
            bool bracket = lx.accept('[');
            if (!(bracket && lx.accept(']'))) {
                if (!lx.done() && lx.peek() != ']') {
                    for (;;) {
                        rels.push_back(parse_rel_item(lx));
                        if (!lx.accept(',')) break;
                    }
                }
                if (bracket) lx.expect(']');
            }
        } else {
            throw RingSpecError("unknown section: " + head);
        }
        if (!lx.done()) throw RingSpecError("trailing input in section: " + sec);
    }
    if (!saw_base || !p || N == 0) throw RingSpecError("missing or incomplete base = witt(p, f, N)");

    FiniteField k = modulus ? FiniteField(*p, *modulus) : FiniteField::with_degree(*p, f);
    if (k.f() != f) throw RingSpecError("modulus degree does not match f");
    WittRing O(k, N);

    auto var_index = [&](const std::string& n) -> size_t {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == n) return i;
        throw RingSpecError("relation mentions unknown variable: " + n);
    };
    std::vector<Monomial> monos;
    std::optional<std::vector<unsigned>> rule;
    for (const auto& it : rels) {
        std::vector<unsigned> u(vars.size(), 0);
        for (const auto& [n, e] : it.vars) u[var_index(n)] += e;
        if (it.is_rewrite) {
            if (rule) throw RingSpecError("at most one rewrite identification is supported");
            rule = u;
        } else {
            monos.push_back({it.a, u});
        }
    }
    return CoefficientRing::create(std::move(O), std::move(vars), std::move(monos), std::move(rule));
}

namespace {

std::string tpoly_str(const std::vector<uint64_t>& c) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        if (!first) os << "+";
        if (i == 0)
            os << c[i];
        else {
            if (c[i] != 1) os << c[i] << "*";
            os << "t";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::string monomial_str(const CoefficientRing& R, const Monomial& m) {
    std::ostringstream os;
    bool first = true;
    if (m.a > 0) {
        os << "p";
        if (m.a > 1) os << "^" << m.a;
        first = false;
    }
    for (size_t i = 0; i < m.u.size(); ++i) {
        if (m.u[i] == 0) continue;
        if (!first) os << "*";
        os << R.var_names()[i];
        if (m.u[i] > 1) os << "^" << m.u[i];
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

}  // namespace

std::string print_ring_spec(const CoefficientRing& R) {
    std::ostringstream os;
    const WittRing& O = R.base();
    os << "base = witt(" << O.p() << ", " << O.f() << ", " << O.N();
    if (O.f() > 1) os << ", " << tpoly_str(O.residue_field().modulus());
    os << "); vars = [";
    for (size_t i = 0; i < R.var_names().size(); ++i) {
        if (i) os << ", ";
        os << R.var_names()[i];
    }
    os << "]; rel = [";
    bool first = true;
    for (const auto& m : R.canonical_relations()) {
        if (!first) os << ", ";
        os << monomial_str(R, m);
        first = false;
    }
    if (R.rewrite_rule()) {
        if (!first) os << ", ";
        os << "p - " << monomial_str(R, {0, *R.rewrite_rule()});
    }
    os << "]";
    return os.str();
}

std::string print_elem(const CoefficientRing& R, const RElem& x) {
    const WittRing& O = R.base();
    const FiniteField& k = R.residue_field();
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < R.nmono(); ++i) {
        WittElem c = O.trunc(x[i], R.cexp(i));
        for (unsigned a = 0; a < R.cexp(i); ++a) {
            // digit at level a: an F_q element
            std::vector<uint64_t> digit(O.f());
            for (unsigned t = 0; t < O.f(); ++t) digit[t] = (c[t] / O.p_pow(a)) % O.p();
            Fq d = k.from_coeffs(digit);
            if (d == 0) continue;
            if (!first) os << " + ";
            std::string ds = k.str(d);
            bool composite = ds.find('+') != std::string::npos || ds.find('t') != std::string::npos;
            bool has_tail = a > 0 || R.degree(i) > 0;
            bool printed = false;
            if (ds != "1" || !has_tail) {
                os << (composite ? "(" + ds + ")" : ds);
                printed = true;
            }
            if (a > 0) {
                if (printed) os << "*";
                os << "p";
                if (a > 1) os << "^" << a;
                printed = true;
            }
            for (size_t l = 0; l < R.nvars(); ++l) {
                if (R.mono(i)[l] == 0) continue;
                if (printed) os << "*";
                os << R.var_names()[l];
                if (R.mono(i)[l] > 1) os << "^" << R.mono(i)[l];
                printed = true;
            }
            first = false;
        }
    }
    if (first) os << "0";
    return os.str();
}

RElem parse_elem(const CoefficientRing& R, const std::string& text) {
    const WittRing& O = R.base();
    Lexer lx(text);
    RElem acc = R.zero();
    if (lx.peek() == '0') {
        lx.expect('0');
        if (lx.done()) return acc;
        throw RingSpecError("malformed element: " + text);
    }
    for (;;) {
        // term: [coeff *]? [p^a *]? [vars]
        uint64_t coeff_int = 1;
        std::vector<uint64_t> coeff_poly;
        bool have_coeff = false;
        unsigned a = 0;
        std::vector<unsigned> u(R.nvars(), 0);
        bool any = false;
        if (lx.accept('(')) {
            coeff_poly = parse_tpoly(lx);
            lx.expect(')');
            have_coeff = true;
            any = true;
            if (!lx.accept('*') && lx.peek_name())
                throw RingSpecError("expected '*' after coefficient");
        } else if (lx.peek_int()) {
            coeff_int = lx.integer();
            have_coeff = true;
            any = true;
            lx.accept('*');
        }
        while (lx.peek_name()) {
            std::string n = lx.name();
            unsigned e = 1;
            if (lx.accept('^')) e = unsigned(lx.integer());
            if (n == "p") {
                a += e;
            } else if (n == "t") {
                throw RingSpecError("bare t outside parentheses in element");
            } else {
                bool found = false;
                for (size_t i = 0; i < R.nvars(); ++i)
                    if (R.var_names()[i] == n) {
                        u[i] += e;
                        found = true;
                    }
                if (!found) throw RingSpecError("unknown variable in element: " + n);
            }
            any = true;
            if (!lx.accept('*')) break;
        }
        if (!any) throw RingSpecError("empty term in element: " + text);
        (void)have_coeff;
        // assemble the term
        WittElem w = coeff_poly.empty() ? O.from_int(int64_t(coeff_int % O.pN()))
                                        : [&] {
                                              WittElem v = O.zero();
                                              for (size_t i = 0; i < coeff_poly.size() && i < v.size(); ++i)
                                                  v[i] = coeff_poly[i] % O.pN();
                                              return v;
                                          }();
        w = O.mul_int(w, O.p_pow(std::min<unsigned>(a, O.N())));
        if (a >= O.N()) w = O.zero();
        RElem term = R.zero();
        size_t idx = R.mono_index(u);
        if (idx == SIZE_MAX) {
            // not a standard monomial: multiply out through ring arithmetic
            term = R.from_base(w);
            for (size_t l = 0; l < R.nvars(); ++l)
                for (unsigned e = 0; e < u[l]; ++e) term = R.mul(term, R.var(l));
        } else {
            term[idx] = w;
            term = R.normalized(std::move(term));
        }
        acc = R.add(acc, term);
        if (!lx.accept('+')) break;
    }
    if (!lx.done()) throw RingSpecError("trailing input in element: " + text);
    return acc;
}

}  // namespace tamelift
