#include <cctype>

#include "tropinf/error.hpp"
#include "tropinf/lang.hpp"

namespace tropinf {

namespace {

enum class Tok { Int, Ident, Succ, Pred, Fix, Ifz, Then, Else, Params, Backslash, Dot, LParen, RParen, ChoiceOpen, RBracket, Semi, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
}

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t j = 0; j < n; ++j) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        int l = line, cl = col;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Tok::Int, src.substr(i, j - i), l, cl});
            advance(j - i);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
                ++j;
            std::string w = src.substr(i, j - i);
            Tok k = Tok::Ident;
            if (w == "succ") k = Tok::Succ;
            else if (w == "pred") k = Tok::Pred;
            else if (w == "fix") k = Tok::Fix;
            else if (w == "ifz") k = Tok::Ifz;
            else if (w == "then") k = Tok::Then;
            else if (w == "else") k = Tok::Else;
            else if (w == "params") k = Tok::Params;
            out.push_back({k, w, l, cl});
            advance(j - i);
            continue;
        }
        if (c == '+' && i + 1 < src.size() && src[i + 1] == '[') {
            out.push_back({Tok::ChoiceOpen, "+[", l, cl});
            advance(2);
            continue;
        }
        Tok k;
        switch (c) {
        case '\\': k = Tok::Backslash; break;
        case '.': k = Tok::Dot; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case ']': k = Tok::RBracket; break;
        case ';': k = Tok::Semi; break;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
        }
        out.push_back({k, std::string(1, c), l, cl});
        advance(1);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Program program() {
        Program p;
        while (peek().kind == Tok::Params) {
            next();
            Token n = expect(Tok::Int, "parameter count");
            declared_ = std::stoi(n.text);
            expect(Tok::Semi, "';'");
        }
        p.term = term();
        if (peek().kind != Tok::End) fail("unexpected " + describe(peek()) + " after term");
        p.params = declared_ >= 0 ? declared_ : max_param(*p.term);
        return p;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().col); }

    Token expect(Tok k, const std::string& what) {
        if (peek().kind != k) fail("expected " + what + ", found " + describe(peek()));
        return next();
    }

    TermPtr term() {
        if (peek().kind == Tok::Backslash) return lam();
        return choice();
    }

    TermPtr lam() {
        expect(Tok::Backslash, "'\\'");
        std::vector<std::string> names;
        names.push_back(expect(Tok::Ident, "variable name").text);
        while (peek().kind == Tok::Ident) names.push_back(next().text);
        expect(Tok::Dot, "'.'");
        TermPtr body = term();
        for (auto it = names.rbegin(); it != names.rend(); ++it) body = mk_lam(*it, body);
        return body;
    }

    TermPtr choice() {
        TermPtr left = app();
        if (peek().kind != Tok::ChoiceOpen) return left;
        next();
        Token p = expect(Tok::Ident, "parameter name");
        int idx = param_index(p);
        expect(Tok::RBracket, "']'");
        TermPtr right = peek().kind == Tok::Backslash ? lam() : choice();
        return mk_choice(idx, left, right);
    }

    int param_index(const Token& p) {
        const std::string& s = p.text;
        bool ok = !s.empty() && s[0] == 'X';
        for (std::size_t i = 1; ok && i < s.size(); ++i) ok = std::isdigit(static_cast<unsigned char>(s[i]));
        if (!ok) throw ParseError("expected parameter of the form Xi, found '" + s + "'", p.line, p.col);
        int idx = s.size() == 1 ? 1 : std::stoi(s.substr(1));
        if (idx < 1 || (declared_ >= 0 && idx > declared_))
            throw ParseError("unknown parameter index " + s, p.line, p.col);
        return idx;
    }

    bool atom_start() const {
        switch (peek().kind) {
        case Tok::Int:
        case Tok::Ident:
        case Tok::Succ:
        case Tok::Pred:
        case Tok::Fix:
        case Tok::Ifz:
        case Tok::LParen:
            return true;
        default:
            return false;
        }
    }

    TermPtr app() {
        if (!atom_start()) fail("expected a term, found " + describe(peek()));
        TermPtr t = atom();
        while (atom_start()) t = mk_app(t, atom());
        return t;
    }

    TermPtr atom() {
        Token t = next();
        switch (t.kind) {
        case Tok::Int:
            return mk_num(std::stoull(t.text));
        case Tok::Ident:
            return mk_var(t.text);
        case Tok::Succ:
            return mk_succ(atom_or_fail());
        case Tok::Pred:
            return mk_pred(atom_or_fail());
        case Tok::Fix:
            return mk_fix(atom_or_fail());
        case Tok::Ifz: {
            TermPtr m = term();
            expect(Tok::Then, "'then'");
            TermPtr n = term();
            expect(Tok::Else, "'else'");
            TermPtr p = term();
            return mk_ifz(m, n, p);
        }
        case Tok::LParen: {
            TermPtr inner = term();
            expect(Tok::RParen, "')'");
            return inner;
        }
        default:
            --pos_;
            fail("expected a term, found " + describe(peek()));
        }
    }

    TermPtr atom_or_fail() {
        if (!atom_start()) fail("expected an argument, found " + describe(peek()));
        return atom();
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int declared_ = -1;
};

} // namespace

Program parse(const std::string& source) { return Parser(lex(source)).program(); }

} // namespace tropinf
