// Surface syntax for formulas: tokenizer, recursive descent parser, and
// the canonical printer.  The two directions are kept in one file so the
// round-trip property (parse of print is identity) has a single home.

#include <cctype>

#include "tangles/logic.hpp"

namespace tangles {

namespace {

// ── Tokens ──────────────────────────────────────────────────────────────

enum class Tok {
    End, LParen, RParen, LBrace, RBrace, Comma,
    Tilde, Amp, Pipe, Arrow, DArrow, Dia, Box, Tangle,
    Bot, Top, Ident,
};

const char* describe(Tok t) {
    switch (t) {
        case Tok::End:    return "end of input";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::Comma:  return "','";
        case Tok::Tilde:  return "'~'";
        case Tok::Amp:    return "'&'";
        case Tok::Pipe:   return "'|'";
        case Tok::Arrow:  return "'->'";
        case Tok::DArrow: return "'<->'";
        case Tok::Dia:    return "'<>'";
        case Tok::Box:    return "'[]'";
        case Tok::Tangle: return "'<t>'";
        case Tok::Bot:    return "'bot'";
        case Tok::Top:    return "'top'";
        case Tok::Ident:  return "identifier";
    }
    return "?";
}

struct Lexer {
    std::string_view text;
    std::size_t pos = 0;

    Tok current = Tok::End;
    std::string ident;
    std::size_t token_pos = 0;

    explicit Lexer(std::string_view t) : text(t) { advance(); }

    [[noreturn]] void fail(const std::string& message, std::size_t at) const {
        throw parse_error(message + " at offset " + std::to_string(at), at);
    }

    void skip_blank() {
        while (pos < text.size()) {
            const char c = text[pos];
            if (c == '#') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else {
                break;
            }
        }
    }

    void advance() {
        skip_blank();
        token_pos = pos;
        if (pos >= text.size()) {
            current = Tok::End;
            return;
        }
        const char c = text[pos];
        switch (c) {
            case '(': ++pos; current = Tok::LParen; return;
            case ')': ++pos; current = Tok::RParen; return;
            case '{': ++pos; current = Tok::LBrace; return;
            case '}': ++pos; current = Tok::RBrace; return;
            case ',': ++pos; current = Tok::Comma; return;
            case '~': ++pos; current = Tok::Tilde; return;
            case '&': ++pos; current = Tok::Amp; return;
            case '|': ++pos; current = Tok::Pipe; return;
            case '-':
                if (pos + 1 < text.size() && text[pos + 1] == '>') {
                    pos += 2;
                    current = Tok::Arrow;
                    return;
                }
                fail("expected '->'", token_pos);
            case '[':
                if (pos + 1 < text.size() && text[pos + 1] == ']') {
                    pos += 2;
                    current = Tok::Box;
                    return;
                }
                fail("expected '[]'", token_pos);
            case '<':
                if (pos + 2 < text.size() && text[pos + 1] == '-' &&
                    text[pos + 2] == '>') {
                    pos += 3;
                    current = Tok::DArrow;
                    return;
                }
                if (pos + 1 < text.size() && text[pos + 1] == '>') {
                    pos += 2;
                    current = Tok::Dia;
                    return;
                }
                if (pos + 2 < text.size() && text[pos + 1] == 't' &&
                    text[pos + 2] == '>') {
                    pos += 3;
                    current = Tok::Tangle;
                    return;
                }
                fail("expected '<->', '<>' or '<t>'", token_pos);
            default:
                break;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos + 1;
            while (end < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[end])) ||
                    text[end] == '_')) {
                ++end;
            }
            ident.assign(text.substr(pos, end - pos));
            pos = end;
            if (ident == "bot") current = Tok::Bot;
            else if (ident == "top") current = Tok::Top;
            else current = Tok::Ident;
            return;
        }
        fail(std::string("unexpected character '") + c + "'", token_pos);
    }

    void expect(Tok t) {
        if (current != t) {
            fail(std::string("expected ") + describe(t) + ", found " +
                     describe(current),
                 token_pos);
        }
        advance();
    }
};

// ── Grammar ─────────────────────────────────────────────────────────────

struct Parser {
    Lexer lex;

    explicit Parser(std::string_view text) : lex(text) {}

    Formula run() {
        Formula f = iff();
        if (lex.current != Tok::End) {
            lex.fail(std::string("unexpected ") + describe(lex.current) +
                         " after formula",
                     lex.token_pos);
        }
        return f;
    }

    Formula iff() {
        Formula f = imp();
        while (lex.current == Tok::DArrow) {
            lex.advance();
            f = Formula::equivalence(std::move(f), imp());
        }
        return f;
    }

    Formula imp() {
        Formula f = disj();
        if (lex.current == Tok::Arrow) {
            lex.advance();
            return Formula::implication(std::move(f), imp());
        }
        return f;
    }

    Formula disj() {
        Formula f = conj();
        while (lex.current == Tok::Pipe) {
            lex.advance();
            f = Formula::disjunction(std::move(f), conj());
        }
        return f;
    }

    Formula conj() {
        Formula f = unary();
        while (lex.current == Tok::Amp) {
            lex.advance();
            f = Formula::conjunction(std::move(f), unary());
        }
        return f;
    }

    Formula unary() {
        switch (lex.current) {
            case Tok::Tilde:
                lex.advance();
                return Formula::negation(unary());
            case Tok::Dia:
                lex.advance();
                return Formula::diamond(unary());
            case Tok::Box:
                lex.advance();
                return Formula::box(unary());
            case Tok::Tangle: {
                const std::size_t at = lex.token_pos;
                lex.advance();
                lex.expect(Tok::LBrace);
                if (lex.current == Tok::RBrace) {
                    lex.fail("tangle needs at least one member", at);
                }
                std::vector<Formula> members;
                members.push_back(iff());
                while (lex.current == Tok::Comma) {
                    lex.advance();
                    members.push_back(iff());
                }
                lex.expect(Tok::RBrace);
                return Formula::tangle(std::move(members));
            }
            default:
                return atom();
        }
    }

    Formula atom() {
        switch (lex.current) {
            case Tok::Bot:
                lex.advance();
                return Formula::bot();
            case Tok::Top:
                lex.advance();
                return Formula::top();
            case Tok::Ident: {
                Formula f = Formula::var(lex.ident);
                lex.advance();
                return f;
            }
            case Tok::LParen: {
                lex.advance();
                Formula f = iff();
                lex.expect(Tok::RParen);
                return f;
            }
            default:
                lex.fail(std::string("expected a formula, found ") +
                             describe(lex.current),
                         lex.token_pos);
        }
    }
};

} // namespace

Formula parse_formula(std::string_view text) { return Parser(text).run(); }

// ── Printing ────────────────────────────────────────────────────────────

namespace {

// Binding strength used for minimal parenthesization; matches the
// grammar levels above.
int strength(Formula::Kind k) {
    switch (k) {
        case Formula::Kind::Iff: return 1;
        case Formula::Kind::Imp: return 2;
        case Formula::Kind::Or:  return 3;
        case Formula::Kind::And: return 4;
        case Formula::Kind::Not:
        case Formula::Kind::Dia:
        case Formula::Kind::Box: return 5;
        default:                 return 6;
    }
}

void render(const Formula& f, int min_strength, std::string& out) {
    const bool parens = strength(f.kind()) < min_strength;
    if (parens) out += '(';
    switch (f.kind()) {
        case Formula::Kind::Bot: out += "bot"; break;
        case Formula::Kind::Top: out += "top"; break;
        case Formula::Kind::Var: out += f.var_name(); break;
        case Formula::Kind::Not:
            out += '~';
            render(f.operand(), 5, out);
            break;
        case Formula::Kind::Dia:
            out += "<>";
            render(f.operand(), 5, out);
            break;
        case Formula::Kind::Box:
            out += "[]";
            render(f.operand(), 5, out);
            break;
        case Formula::Kind::And:
            render(f.left(), 4, out);
            out += " & ";
            render(f.right(), 5, out);
            break;
        case Formula::Kind::Or:
            render(f.left(), 3, out);
            out += " | ";
            render(f.right(), 4, out);
            break;
        case Formula::Kind::Imp:
            // Right-nested implications keep their parentheses: the usual
            // way these axioms are written, and easier to read aloud.
            render(f.left(), 3, out);
            out += " -> ";
            render(f.right(), 3, out);
            break;
        case Formula::Kind::Iff:
            render(f.left(), 1, out);
            out += " <-> ";
            render(f.right(), 2, out);
            break;
        case Formula::Kind::Tangle: {
            out += "<t>{";
            bool first = true;
            for (const Formula& m : f.tangle_members()) {
                if (!first) out += ", ";
                render(m, 1, out);
                first = false;
            }
            out += '}';
            break;
        }
    }
    if (parens) out += ')';
}

} // namespace

std::string Formula::to_string() const {
    std::string out;
    render(*this, 1, out);
    return out;
}

} // namespace tangles
