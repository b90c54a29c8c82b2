#include <quantasp/textio.hpp>

#include <optional>
#include <sstream>

namespace quantasp {

namespace {

bool is_atom_start(char c) {
    return (c >= 'a' && c <= 'z') || c == '_';
}

bool is_atom_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '(' ||
           c == ')';
}

enum class Tok : std::uint8_t { Atom, Not, If, Dot, Comma, LBrace, RBrace, Semi, Directive, End };

struct Token {
    Tok         kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
public:
    explicit Lexer(std::string_view text)
        : text_(text) {}

    Token next() {
        skip_space_and_comments();
        Token t{Tok::End, {}, line_, column_};
        if (pos_ >= text_.size()) {
            return t;
        }
        char c = text_[pos_];
        if (c == '%') { // only directives survive skip_space_and_comments
            advance(2);
            std::size_t start = pos_;
            while (pos_ < text_.size() && is_atom_char(text_[pos_])) {
                advance(1);
            }
            t.kind = Tok::Directive;
            t.text = std::string(text_.substr(start, pos_ - start));
            return t;
        }
        if (is_atom_start(c)) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && is_atom_char(text_[pos_])) {
                advance(1);
            }
            t.text = std::string(text_.substr(start, pos_ - start));
            t.kind = t.text == "not" ? Tok::Not : Tok::Atom;
            return t;
        }
        switch (c) {
            case '.': t.kind = Tok::Dot; break;
            case ',': t.kind = Tok::Comma; break;
            case '{': t.kind = Tok::LBrace; break;
            case '}': t.kind = Tok::RBrace; break;
            case ';': t.kind = Tok::Semi; break;
            case ':':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
                    advance(2);
                    t.kind = Tok::If;
                    t.text = ":-";
                    return t;
                }
                throw ParseError("expected ':-'", line_, column_);
            default: {
                std::string shown = (static_cast<unsigned char>(c) >= 0x20 && static_cast<unsigned char>(c) < 0x7f)
                                        ? std::string(1, c)
                                        : "\\x" + hex(static_cast<unsigned char>(c));
                throw ParseError("unexpected character '" + shown + "'", line_, column_);
            }
        }
        t.text = std::string(1, c);
        advance(1);
        return t;
    }

private:
    static std::string hex(unsigned char c) {
        const char* digits = "0123456789abcdef";
        return {digits[c >> 4], digits[c & 15]};
    }

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
            if (text_[pos_] == '\n') {
                ++line_;
                column_ = 1;
            } else {
                ++column_;
            }
            ++pos_;
        }
    }

    void skip_space_and_comments() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance(1);
            } else if (c == '%' && !(pos_ + 1 < text_.size() && text_[pos_ + 1] == '@')) {
                while (pos_ < text_.size() && text_[pos_] != '\n') {
                    advance(1);
                }
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t      pos_    = 0;
    std::size_t      line_   = 1;
    std::size_t      column_ = 1;
};

class Parser {
public:
    Parser(std::string_view text, const ParseOptions& opts)
        : lex_(text)
        , opts_(opts)
        , symbols_(std::make_shared<SymbolTable>()) {
        tok_ = lex_.next();
    }

    SourceDocument document() {
        SourceDocument doc{symbols_, {}};
        while (tok_.kind != Tok::End) {
            if (tok_.kind != Tok::Directive) {
                if (doc.sections.empty()) {
                    throw ParseError("rule outside of a section (expected %@exists or %@forall)", tok_.line, tok_.column);
                }
                doc.sections.back().rules.push_back(rule());
                continue;
            }
            SectionMarker marker = directive(tok_);
            if (!doc.sections.empty() && doc.sections.back().marker == SectionMarker::Constraint) {
                throw ParseError("%@constraint must be the last section", tok_.line, tok_.column);
            }
            if (marker == SectionMarker::Constraint && doc.sections.empty()) {
                throw ParseError("%@constraint before any quantified section", tok_.line, tok_.column);
            }
            doc.sections.push_back({marker, tok_.line, {}});
            tok_ = lex_.next();
        }
        return doc;
    }

    Program rules_only() {
        Program p(symbols_);
        while (tok_.kind != Tok::End) {
            if (tok_.kind == Tok::Directive) {
                throw ParseError("section marker in a plain program", tok_.line, tok_.column);
            }
            p.add(rule().rule);
        }
        return p;
    }

private:
    static SectionMarker directive(const Token& t) {
        if (t.text == "exists") {
            return SectionMarker::Exists;
        }
        if (t.text == "forall") {
            return SectionMarker::Forall;
        }
        if (t.text == "constraint") {
            return SectionMarker::Constraint;
        }
        throw ParseError("unknown directive '%@" + t.text + "'", t.line, t.column);
    }

    Token expect(Tok k, const char* what) {
        if (tok_.kind != k) {
            throw ParseError(std::string("expected ") + what, tok_.line, tok_.column);
        }
        Token t = tok_;
        tok_    = lex_.next();
        return t;
    }

    AtomId atom() {
        Token t = expect(Tok::Atom, "atom");
        if (!opts_.allow_reserved && is_reserved_name(t.text)) {
            throw ParseError("atom '" + t.text + "' uses a reserved prefix", t.line, t.column);
        }
        return symbols_->intern(t.text);
    }

    std::vector<Literal> body() {
        std::vector<Literal> out;
        for (;;) {
            bool positive = true;
            if (tok_.kind == Tok::Not) {
                tok_     = lex_.next();
                positive = false;
            }
            out.push_back({atom(), positive});
            if (tok_.kind != Tok::Comma) {
                return out;
            }
            tok_ = lex_.next();
        }
    }

    SourceRule rule() {
        std::size_t line = tok_.line, column = tok_.column;
        if (tok_.kind == Tok::If) {
            tok_   = lex_.next();
            auto b = body();
            expect(Tok::Dot, "'.'");
            return {Rule::constraint(std::move(b)), line, column};
        }
        if (tok_.kind == Tok::LBrace) {
            tok_ = lex_.next();
            std::vector<AtomId> atoms{atom()};
            while (tok_.kind == Tok::Semi) {
                tok_ = lex_.next();
                atoms.push_back(atom());
            }
            expect(Tok::RBrace, "'}'");
            std::vector<Literal> b;
            if (tok_.kind == Tok::If) {
                tok_ = lex_.next();
                b    = body();
            }
            expect(Tok::Dot, "'.'");
            return {Rule::choice(std::move(atoms), std::move(b)), line, column};
        }
        AtomId               head = atom();
        std::vector<Literal> b;
        if (tok_.kind == Tok::If) {
            tok_ = lex_.next();
            b    = body();
        }
        expect(Tok::Dot, "'.'");
        return {Rule::normal(head, std::move(b)), line, column};
    }

    Lexer                        lex_;
    ParseOptions                 opts_;
    std::shared_ptr<SymbolTable> symbols_;
    Token                        tok_;
};

} // namespace

SourceDocument parse_document(std::string_view text, const ParseOptions& opts) {
    return Parser(text, opts).document();
}

QuantifiedProgram parse(std::string_view text, const ParseOptions& opts) {
    auto doc = parse_document(text, opts);
    if (doc.sections.empty()) {
        throw ParseError("no quantified section", 1, 1);
    }
    std::vector<Level>             levels;
    Program                        constraint(doc.symbols);
    const SourceSection*           constraint_section = nullptr;
    for (const auto& s : doc.sections) {
        Program p(doc.symbols);
        for (const auto& r : s.rules) {
            p.add(r.rule);
        }
        if (s.marker == SectionMarker::Constraint) {
            constraint         = std::move(p);
            constraint_section = &s;
        } else {
            levels.push_back({s.marker == SectionMarker::Exists ? Quantifier::Exists : Quantifier::Forall, std::move(p)});
        }
    }
    if (!is_stratified(constraint)) {
        throw ParseError("constraint section is not stratified", constraint_section->line, 1);
    }
    return QuantifiedProgram(doc.symbols, std::move(levels), std::move(constraint));
}

Program parse_program(std::string_view text, const ParseOptions& opts) {
    return Parser(text, opts).rules_only();
}

std::string render(const Literal& l, const SymbolTable& symbols) {
    return l.positive ? symbols.name(l.atom) : "not " + symbols.name(l.atom);
}

std::string render(const Rule& r, const SymbolTable& symbols) {
    std::string out;
    switch (r.kind()) {
        case RuleKind::Normal: out = symbols.name(r.head_atom()); break;
        case RuleKind::Choice: {
            out = "{";
            for (std::size_t i = 0; i < r.head().size(); ++i) {
                out += (i ? ";" : "") + symbols.name(r.head()[i]);
            }
            out += "}";
            break;
        }
        case RuleKind::Constraint: break;
    }
    if (!r.body().empty()) {
        out += r.kind() == RuleKind::Constraint ? ":- " : " :- ";
        for (std::size_t i = 0; i < r.body().size(); ++i) {
            out += (i ? ", " : "") + render(r.body()[i], symbols);
        }
    }
    return out + ".";
}

std::string render(const Program& p) {
    std::string out;
    for (const auto& r : p.rules()) {
        out += render(r, p.symbols()) + "\n";
    }
    return out;
}

std::string render(const QuantifiedProgram& qp) {
    std::string out;
    for (const auto& l : qp.levels()) {
        out += l.quantifier == Quantifier::Exists ? "%@exists\n" : "%@forall\n";
        out += render(l.program);
    }
    out += "%@constraint\n";
    out += render(qp.constraint());
    return out;
}

std::string render(const PartialInterpretation& i, const SymbolTable& symbols) {
    std::string out = "{";
    bool        first = true;
    for (auto a : i.base()) {
        auto v = i.value(a);
        if (v == Truth::Undef) {
            continue;
        }
        out += (first ? "" : ", ") + std::string(v == Truth::False ? "~" : "") + symbols.name(a);
        first = false;
    }
    return out + "}";
}

} // namespace quantasp
