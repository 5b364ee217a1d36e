#include <cctype>
#include <sstream>

#include "wfree/field.hpp"

namespace wfree {

namespace {

std::string coef_text(const RatFun& c) {
    if (c.is_constant()) return c.str();
    return "(" + c.str() + ")";
}

std::string atom_text(const FieldExpr& e) {
    std::string s = e.str();
    if (e.tag() == FieldExpr::Tag::Sum || e.tag() == FieldExpr::Tag::Scale) return "(" + s + ")";
    return s;
}

std::string dir_text(const DirTerms& dir) {
    std::string out;
    for (auto& [name, v] : dir) {
        std::string term;
        if (v.is_one())
            term = name;
        else if (v == RatFun(-1))
            term = "-" + name;
        else
            term = "(" + v.str() + ")*" + name;
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
    }
    return out.empty() ? "0" : out;
}

}  // namespace

std::string FieldExpr::str() const {
    if (!p_) return "";
    const Node& n = *p_;
    switch (n.tag) {
        case Tag::Gen: return n.name;
        case Tag::Deriv:
            return (n.order == 1 ? std::string("d(") : "d^" + std::to_string(n.order) + "(") + n.kids[0].str() + ")";
        case Tag::NormOrd: {
            std::vector<FieldExpr> f{n.kids[0]};
            FieldExpr rest = n.kids[1];
            while (rest.tag() == Tag::NormOrd) {
                f.push_back(rest.node().kids[0]);
                rest = rest.node().kids[1];
            }
            f.push_back(rest);
            std::string out = ":";
            for (size_t i = 0; i < f.size(); ++i) {
                if (i) out += " ";
                out += (f[i].tag() == Tag::NormOrd) ? "(" + f[i].str() + ")" : atom_text(f[i]);
            }
            return out + ":";
        }
        case Tag::Scale: {
            const FieldExpr& k = n.kids[0];
            std::string body = k.tag() == Tag::Sum ? "(" + k.str() + ")" : k.str();
            if (n.coef == RatFun(-1)) return "-" + body;
            return coef_text(n.coef) + "*" + body;
        }
        case Tag::Sum: {
            if (n.kids.empty()) return "0";
            std::string out;
            for (size_t i = 0; i < n.kids.size(); ++i) {
                std::string s = n.kids[i].str();
                if (i == 0)
                    out = s;
                else if (s[0] == '-')
                    out += " - " + s.substr(1);
                else
                    out += " + " + s;
            }
            return out;
        }
        case Tag::Exp: {
            std::string out = "exp(" + coef_text(n.coef) + "*int(" + dir_text(n.dir) + ")";
            if (n.explicit_shift) {
                out += ";shift=";
                for (size_t i = 0; i < n.shift.size(); ++i) {
                    if (i) out += ",";
                    out += n.shift[i].first + ":" + coef_text(n.shift[i].second);
                }
            }
            return out + ")";
        }
    }
    return "";
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    FieldExpr parse() {
        FieldExpr e = expr();
        ws();
        if (i_ != s_.size()) fail("trailing input");
        return e;
    }

private:
    const std::string& s_;
    size_t i_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw Error(Errc::ParseError, why + " at offset " + std::to_string(i_) + " in '" + s_ + "'");
    }
    void ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool peek(char c) {
        ws();
        return i_ < s_.size() && s_[i_] == c;
    }
    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++i_;
    }
    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '~' || c == '\'';
    }
    std::string ident() {
        ws();
        if (i_ >= s_.size() || !ident_start(s_[i_])) fail("expected identifier");
        size_t b = i_;
        while (i_ < s_.size() && ident_char(s_[i_])) ++i_;
        return s_.substr(b, i_ - b);
    }
    size_t match_paren(size_t open) const {
        int depth = 0;
        for (size_t j = open; j < s_.size(); ++j) {
            if (s_[j] == '(') ++depth;
            if (s_[j] == ')' && --depth == 0) return j;
        }
        fail("unbalanced parenthesis");
    }
    bool star_after(size_t j) const {
        while (j < s_.size() && std::isspace(static_cast<unsigned char>(s_[j]))) ++j;
        return j < s_.size() && s_[j] == '*';
    }
    RatFun scalar(const std::string& text) const {
        try {
            return parse_ratfun(text);
        } catch (const Error&) {
            throw Error(Errc::ParseError, "bad coefficient '" + text + "' in '" + s_ + "'");
        }
    }

    FieldExpr expr() {
        std::vector<FieldExpr> terms{term()};
        for (;;) {
            if (peek('+')) {
                ++i_;
                terms.push_back(term());
            } else if (peek('-')) {
                ++i_;
                terms.push_back(-term());
            } else {
                break;
            }
        }
        return FieldExpr::sum(terms);
    }

    FieldExpr term() {
        ws();
        if (peek('-')) {
            ++i_;
            return -term();
        }
        if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            size_t b = i_;
            while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '/')) ++i_;
            std::string lit = s_.substr(b, i_ - b);
            if (!star_after(i_)) fail("expected '*' after coefficient");
            expect('*');
            return FieldExpr::scale(scalar(lit), atom());
        }
        if (peek('(')) {
            size_t close = match_paren(i_);
            if (star_after(close + 1)) {
                std::string inner = s_.substr(i_ + 1, close - i_ - 1);
                bool ok = true;
                RatFun c;
                try {
                    c = parse_ratfun(inner);
                } catch (const Error&) {
                    ok = false;
                }
                if (ok) {
                    i_ = close + 1;
                    expect('*');
                    return FieldExpr::scale(c, atom());
                }
            }
        }
        return atom();
    }

    FieldExpr atom() {
        ws();
        if (i_ >= s_.size()) fail("unexpected end");
        char c = s_[i_];
        if (c == ':') {
            ++i_;
            std::vector<FieldExpr> f;
            while (!peek(':')) {
                if (i_ >= s_.size()) fail("unterminated normal ordering");
                f.push_back(term());
            }
            ++i_;
            if (f.size() < 2) fail("normal ordering needs two factors");
            return FieldExpr::nord(f);
        }
        if (c == '(') {
            ++i_;
            FieldExpr e = expr();
            expect(')');
            return e;
        }
        size_t save = i_;
        std::string id = ident();
        if (id == "d" && (peek('(') || peek('^'))) {
            int order = 1;
            if (peek('^')) {
                ++i_;
                ws();
                size_t b = i_;
                while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
                if (b == i_) fail("expected derivative order");
                order = std::stoi(s_.substr(b, i_ - b));
            }
            expect('(');
            FieldExpr e = expr();
            expect(')');
            return FieldExpr::deriv(e, order);
        }
        if (id == "exp" && peek('(')) return exponential();
        (void)save;
        return FieldExpr::gen(id);
    }

    FieldExpr exponential() {
        size_t open = i_;
        size_t close = match_paren(open);
        std::string body = s_.substr(open + 1, close - open - 1);
        i_ = close + 1;
        // split off ;shift=
        std::string main = body, shift_txt;
        int depth = 0;
        for (size_t j = 0; j < body.size(); ++j) {
            if (body[j] == '(') ++depth;
            if (body[j] == ')') --depth;
            if (body[j] == ';' && depth == 0) {
                main = body.substr(0, j);
                shift_txt = body.substr(j + 1);
                break;
            }
        }
        size_t k = std::string::npos;
        depth = 0;
        for (size_t j = 0; j + 4 <= main.size(); ++j) {
            if (main[j] == '(') ++depth;
            if (main[j] == ')') --depth;
            if (depth == 0 && main.compare(j, 4, "int(") == 0 && (j == 0 || !ident_char(main[j - 1]))) {
                k = j;
                break;
            }
        }
        if (k == std::string::npos) throw Error(Errc::ParseError, "exponential without int(...) in '" + s_ + "'");
        std::string pre = main.substr(0, k);
        while (!pre.empty() && std::isspace(static_cast<unsigned char>(pre.back()))) pre.pop_back();
        RatFun coef(1);
        if (!pre.empty() && pre.back() == '*') {
            pre.pop_back();
            coef = scalar(pre);
        } else if (pre == "-") {
            coef = RatFun(-1);
        } else if (!pre.empty()) {
            throw Error(Errc::ParseError, "bad exponential prefix '" + pre + "' in '" + s_ + "'");
        }
        size_t dopen = k + 3;
        int d2 = 0;
        size_t dclose = std::string::npos;
        for (size_t j = dopen; j < main.size(); ++j) {
            if (main[j] == '(') ++d2;
            if (main[j] == ')' && --d2 == 0) {
                dclose = j;
                break;
            }
        }
        if (dclose == std::string::npos) throw Error(Errc::ParseError, "unbalanced int( in '" + s_ + "'");
        for (size_t j = dclose + 1; j < main.size(); ++j)
            if (!std::isspace(static_cast<unsigned char>(main[j])))
                throw Error(Errc::ParseError, "trailing text after int(...) in '" + s_ + "'");
        DirTerms dir = direction(main.substr(dopen + 1, dclose - dopen - 1));
        if (shift_txt.empty()) return FieldExpr::expo(coef, dir);
        std::string key = "shift=";
        size_t p = shift_txt.find_first_not_of(' ');
        if (p == std::string::npos || shift_txt.compare(p, key.size(), key) != 0)
            throw Error(Errc::ParseError, "expected shift= in '" + s_ + "'");
        DirTerms shift;
        std::string list = shift_txt.substr(p + key.size());
        size_t b = 0;
        depth = 0;
        for (size_t j = 0; j <= list.size(); ++j) {
            if (j < list.size() && list[j] == '(') ++depth;
            if (j < list.size() && list[j] == ')') --depth;
            if (j == list.size() || (list[j] == ',' && depth == 0)) {
                std::string item = list.substr(b, j - b);
                size_t colon = item.find(':');
                if (colon == std::string::npos) throw Error(Errc::ParseError, "bad shift entry '" + item + "'");
                std::string name = item.substr(0, colon);
                name.erase(0, name.find_first_not_of(' '));
                name.erase(name.find_last_not_of(' ') + 1);
                shift.emplace_back(name, scalar(item.substr(colon + 1)));
                b = j + 1;
            }
        }
        return FieldExpr::expo(coef, dir, shift);
    }

    DirTerms direction(const std::string& text) const {
        DirTerms out;
        size_t j = 0;
        auto skip = [&] {
            while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        };
        bool first = true;
        while (true) {
            skip();
            if (j >= text.size()) break;
            RatFun sign(1);
            if (text[j] == '+' || text[j] == '-') {
                if (text[j] == '-') sign = RatFun(-1);
                ++j;
                skip();
            } else if (!first) {
                throw Error(Errc::ParseError, "expected + or - in direction '" + text + "'");
            }
            first = false;
            RatFun c(1);
            if (j < text.size() && (text[j] == '(' || std::isdigit(static_cast<unsigned char>(text[j])))) {
                size_t e;
                if (text[j] == '(') {
                    int depth = 0;
                    e = j;
                    for (; e < text.size(); ++e) {
                        if (text[e] == '(') ++depth;
                        if (text[e] == ')' && --depth == 0) break;
                    }
                    c = scalar(text.substr(j + 1, e - j - 1));
                    j = e + 1;
                } else {
                    e = j;
                    while (e < text.size() && (std::isdigit(static_cast<unsigned char>(text[e])) || text[e] == '/')) ++e;
                    c = scalar(text.substr(j, e - j));
                    j = e;
                }
                skip();
                if (j >= text.size() || text[j] != '*')
                    throw Error(Errc::ParseError, "expected '*' in direction '" + text + "'");
                ++j;
                skip();
            }
            size_t b = j;
            while (j < text.size() && ident_char(text[j])) ++j;
            if (b == j) throw Error(Errc::ParseError, "expected species in direction '" + text + "'");
            out.emplace_back(text.substr(b, j - b), sign * c);
        }
        return out;
    }
};

}  // namespace

FieldExpr parse_field(const std::string& text) { return Parser(text).parse(); }

}  // namespace wfree
