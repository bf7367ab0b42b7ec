// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "cubereach/dsl.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>
#include <unordered_set>

namespace cubereach {

std::string to_string(const Diagnostic& d) {
    std::ostringstream out;
    out << (d.severity == Diagnostic::Severity::Error ? "error" : "warning");
    if (d.span.line > 0) out << " at " << d.span.line << ":" << d.span.col;
    out << ": " << d.message;
    return out.str();
}

const DslModel* DslDocument::find_model(std::string_view name) const {
    for (const DslModel& m : models)
        if (m.name == name) return &m;
    return nullptr;
}

const DslCube* DslDocument::find_cube(std::string_view name) const {
    for (const DslCube& c : cubes)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

bool is_name_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '#' || c == '\'' ||
           c == '~';
}

struct Token {
    enum Kind { Name, Punct, End } kind = End;
    std::string_view text;
    SourceSpan span;
};

struct Lexer {
    std::string_view src;
    std::size_t pos = 0, line = 1, col = 1;
    Token current;

    explicit Lexer(std::string_view s) : src(s) { advance(); }

    void bump(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            if (src[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++pos;
        }
    }

    void skip_space() {
        for (;;) {
            while (pos < src.size() &&
                   (src[pos] == ' ' || src[pos] == '\t' || src[pos] == '\n' ||
                    src[pos] == '\r'))
                bump(1);
            if (pos + 1 < src.size() && src[pos] == '/' && src[pos + 1] == '/') {
                while (pos < src.size() && src[pos] != '\n') bump(1);
                continue;
            }
            break;
        }
    }

    void advance() {
        skip_space();
        current.span = {line, col};
        if (pos >= src.size()) {
            current.kind = Token::End;
            current.text = {};
            return;
        }
        char c = src[pos];
        if (is_name_char(c)) {
            std::size_t start = pos;
            while (pos < src.size() && is_name_char(src[pos])) bump(1);
            current.kind = Token::Name;
            current.text = src.substr(start, pos - start);
            return;
        }
        // multi-char punctuation first
        if (c == '.' && pos + 1 < src.size() && src[pos + 1] == '.') {
            current.kind = Token::Punct;
            current.text = src.substr(pos, 2);
            bump(2);
            return;
        }
        if (c == '-' && pos + 1 < src.size() && src[pos + 1] == '>') {
            current.kind = Token::Punct;
            current.text = src.substr(pos, 2);
            bump(2);
            return;
        }
        current.kind = Token::Punct;
        current.text = src.substr(pos, 1);
        bump(1);
    }
};

struct ParseError {
    Diagnostic diagnostic;
};

[[noreturn]] void fail(SourceSpan span, std::string message) {
    throw ParseError{{Diagnostic::Severity::Error, std::move(message), span}};
}

struct Parser {
    Lexer lex;
    std::vector<Diagnostic>& diagnostics;

    Parser(std::string_view text, std::vector<Diagnostic>& diags)
        : lex(text), diagnostics(diags) {}

    const Token& peek() const { return lex.current; }
    Token take() {
        Token t = lex.current;
        lex.advance();
        return t;
    }
    bool at_name(std::string_view text) const {
        return peek().kind == Token::Name && peek().text == text;
    }
    bool at_punct(std::string_view text) const {
        return peek().kind == Token::Punct && peek().text == text;
    }
    Token expect_name(std::string_view what) {
        if (peek().kind != Token::Name)
            fail(peek().span, "expected " + std::string(what) + ", found '" +
                                  std::string(peek().text) + "'");
        return take();
    }
    void expect_punct(std::string_view text) {
        if (!at_punct(text))
            fail(peek().span, "expected '" + std::string(text) + "', found '" +
                                  std::string(peek().text) + "'");
        take();
    }

    Count parse_nat(std::string_view what) {
        Token t = expect_name(what);
        Count value = 0;
        auto [p, ec] =
            std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc{} || p != t.text.data() + t.text.size())
            fail(t.span, "expected a number for " + std::string(what) +
                             ", found '" + std::string(t.text) + "'");
        return value;
    }

    std::pair<Count, UBound> parse_range() {
        Count lo = parse_nat("a lower bound");
        expect_punct("..");
        if (at_name("inf")) {
            take();
            return {lo, UBound::inf()};
        }
        Token t = expect_name("an upper bound");
        Count hi = 0;
        auto [p, ec] =
            std::from_chars(t.text.data(), t.text.data() + t.text.size(), hi);
        if (ec != std::errc{} || p != t.text.data() + t.text.size())
            fail(t.span, "expected a number or inf, found '" +
                             std::string(t.text) + "'");
        return {lo, UBound::of(hi)};
    }

    std::vector<std::string> parse_name_list(std::string_view what) {
        std::vector<std::string> names;
        while (peek().kind == Token::Name)
            names.push_back(std::string(take().text));
        if (names.empty())
            fail(peek().span, "expected at least one " + std::string(what));
        expect_punct(";");
        return names;
    }

    // model body: states, optional alphabet, transitions
    template <class ParseTrans>
    void parse_model_body(std::vector<std::string>& states,
                          std::vector<std::string>& letters,
                          bool alphabet_allowed, ParseTrans&& parse_trans) {
        expect_punct("{");
        if (!at_name("states"))
            fail(peek().span, "expected a states section");
        take();
        expect_punct(":");
        states = parse_name_list("state name");
        if (at_name("alphabet")) {
            Token t = take();
            if (!alphabet_allowed)
                fail(t.span, "observation nets have no alphabet section");
            expect_punct(":");
            letters = parse_name_list("letter name");
        }
        if (!at_name("transitions"))
            fail(peek().span, "expected a transitions section");
        take();
        expect_punct(":");
        while (!at_punct("}")) {
            parse_trans();
            if (at_punct(";")) {
                take();
                continue;
            }
            break;
        }
        expect_punct("}");
    }

    StateId resolve(const std::vector<std::string>& names, const Token& t,
                    std::string_view what) {
        for (std::uint32_t i = 0; i < names.size(); ++i)
            if (names[i] == t.text) return i;
        fail(t.span, "unknown " + std::string(what) + " '" +
                         std::string(t.text) + "'");
    }

    DslModel parse_rbn(Token name_token) {
        std::vector<std::string> states, letters;
        std::vector<RbnTransition> ts;
        parse_model_body(states, letters, true, [&] {
            Token src = expect_name("a source state");
            bool bcast;
            if (at_punct("!"))
                bcast = true;
            else if (at_punct("?"))
                bcast = false;
            else
                fail(peek().span, "expected '!' or '?' after the source state");
            take();
            Token letter = expect_name("a letter");
            Token tgt = expect_name("a target state");
            ts.push_back({resolve(states, src, "state"),
                          bcast ? RbnAction::Broadcast : RbnAction::Receive,
                          resolve(letters, letter, "letter"),
                          resolve(states, tgt, "state")});
        });
        return {std::string(name_token.text), name_token.span,
                RbnModel(std::move(states), std::move(letters), std::move(ts))};
    }

    DslModel parse_asms(Token name_token) {
        std::vector<std::string> states, letters;
        std::vector<AsmsTransition> ts;
        parse_model_body(states, letters, true, [&] {
            Token src = expect_name("a source state");
            Token op = expect_name("a register operation");
            if (op.text != "W" && op.text != "R")
                fail(op.span, "expected W(letter) or R(letter)");
            expect_punct("(");
            Token letter = expect_name("a letter");
            expect_punct(")");
            Token tgt = expect_name("a target state");
            ts.push_back({resolve(states, src, "state"),
                          op.text == "W" ? RegisterOp::Write : RegisterOp::Read,
                          resolve(letters, letter, "letter"),
                          resolve(states, tgt, "state")});
        });
        return {std::string(name_token.text), name_token.span,
                AsmsModel(std::move(states), std::move(letters), std::move(ts))};
    }

    DslModel parse_ionet(Token name_token) {
        std::vector<std::string> states, letters;
        std::vector<IoTransition> ts;
        parse_model_body(states, letters, false, [&] {
            Token src = expect_name("a source state");
            expect_punct("@");
            Token obs = expect_name("an observed state");
            expect_punct("->");
            Token tgt = expect_name("a target state");
            ts.push_back({resolve(states, src, "state"),
                          resolve(states, obs, "state"),
                          resolve(states, tgt, "state")});
        });
        return {std::string(name_token.text), name_token.span,
                IoNetModel(std::move(states), std::move(ts))};
    }

    DslCube parse_cube(const DslDocument& doc) {
        Token name_token = expect_name("a cube name");
        if (!at_name("of")) fail(peek().span, "expected 'of'");
        take();
        Token model_token = expect_name("a model name");
        const DslModel* model = doc.find_model(model_token.text);
        if (!model)
            fail(model_token.span, "cube refers to undeclared model '" +
                                       std::string(model_token.text) + "'");

        std::span<const std::string> state_names =
            model->rbn()     ? model->rbn()->state_names()
            : model->asms()  ? model->asms()->state_names()
                             : model->ionet()->state_names();

        expect_punct("{");
        std::optional<std::pair<Count, UBound>> default_range;
        std::vector<std::pair<Token, std::pair<Count, UBound>>> entries;
        std::optional<Token> register_token;
        while (!at_punct("}")) {
            Token key = expect_name("a state name, default or register");
            expect_punct(":");
            if (key.text == "register") {
                register_token = expect_name("a register letter");
            } else if (key.text == "default") {
                default_range = parse_range();
            } else {
                entries.push_back({key, parse_range()});
            }
            if (at_punct(";")) take();
        }
        expect_punct("}");

        std::pair<Count, UBound> dflt =
            default_range.value_or(std::pair<Count, UBound>{0, UBound::of(0)});
        std::vector<Count> lo(state_names.size(), dflt.first);
        std::vector<UBound> hi(state_names.size(), dflt.second);
        for (const auto& [token, range] : entries) {
            std::optional<StateId> q;
            for (std::uint32_t i = 0; i < state_names.size(); ++i)
                if (state_names[i] == token.text) q = i;
            if (!q)
                fail(token.span, "cube constrains unknown state '" +
                                     std::string(token.text) + "'");
            lo[*q] = range.first;
            hi[*q] = range.second;
        }

        DslCube cube;
        cube.name = std::string(name_token.text);
        cube.model_name = std::string(model_token.text);
        cube.span = name_token.span;
        try {
            cube.bounds = Cube(std::move(lo), std::move(hi));
        } catch (const DomainError& e) {
            fail(name_token.span, e.what());
        }
        if (model->asms()) {
            if (!register_token)
                fail(name_token.span,
                     "cube over a shared-memory model needs a register entry");
            auto letter = model->asms()->find_letter(register_token->text);
            if (!letter)
                fail(register_token->span, "unknown register value '" +
                                               std::string(register_token->text) +
                                               "'");
            cube.reg = *letter;
        } else if (register_token) {
            fail(register_token->span,
                 "register entries only apply to shared-memory models");
        }
        return cube;
    }

    DslDocument parse_document_body() {
        DslDocument doc;
        std::unordered_set<std::string> names;
        auto claim_name = [&](const std::string& n, SourceSpan span) {
            if (!names.insert(n).second)
                fail(span, "duplicate declaration name '" + n + "'");
        };
        while (peek().kind != Token::End) {
            Token kind = expect_name("rbn, asms, ionet or cube");
            if (kind.text == "rbn" || kind.text == "asms" ||
                kind.text == "ionet") {
                Token name_token = expect_name("a model name");
                try {
                    DslModel m = kind.text == "rbn"    ? parse_rbn(name_token)
                                 : kind.text == "asms" ? parse_asms(name_token)
                                                       : parse_ionet(name_token);
                    claim_name(m.name, name_token.span);
                    doc.models.push_back(std::move(m));
                } catch (const DomainError& e) {
                    fail(name_token.span, e.what());
                }
            } else if (kind.text == "cube") {
                DslCube c = parse_cube(doc);
                claim_name(c.name, c.span);
                doc.cubes.push_back(std::move(c));
            } else {
                fail(kind.span, "expected rbn, asms, ionet or cube, found '" +
                                    std::string(kind.text) + "'");
            }
        }
        return doc;
    }
};

} // namespace

ParseResult parse_document(std::string_view text) {
    ParseResult result;
    Parser parser(text, result.diagnostics);
    try {
        result.document = parser.parse_document_body();
    } catch (const ParseError& e) {
        result.diagnostics.push_back(e.diagnostic);
        result.document.reset();
    }
    return result;
}

namespace {

void emit_names(std::ostringstream& out, std::span<const std::string> names) {
    for (std::size_t i = 0; i < names.size(); ++i)
        out << (i ? " " : "") << names[i];
}

std::string range_text(Count lo, UBound hi) {
    std::string out = std::to_string(lo) + "..";
    return out + (hi.is_inf() ? "inf" : std::to_string(hi.value()));
}

} // namespace

std::string emit_model(const RbnModel& m, std::string_view name) {
    std::ostringstream out;
    out << "rbn " << name << " {\n  states: ";
    emit_names(out, m.state_names());
    out << ";\n  alphabet: ";
    emit_names(out, m.letter_names());
    out << ";\n  transitions:\n";
    for (const RbnTransition& t : m.transitions())
        out << "    " << m.state_name(t.source)
            << (t.action == RbnAction::Broadcast ? " !" : " ?")
            << m.letter_name(t.letter) << " " << m.state_name(t.target)
            << ";\n";
    out << "}\n";
    return out.str();
}

std::string emit_model(const AsmsModel& m, std::string_view name) {
    std::ostringstream out;
    out << "asms " << name << " {\n  states: ";
    emit_names(out, m.state_names());
    out << ";\n  alphabet: ";
    emit_names(out, m.letter_names());
    out << ";\n  transitions:\n";
    for (const AsmsTransition& t : m.transitions())
        out << "    " << m.state_name(t.source)
            << (t.op == RegisterOp::Write ? " W(" : " R(")
            << m.letter_name(t.letter) << ") " << m.state_name(t.target)
            << ";\n";
    out << "}\n";
    return out.str();
}

std::string emit_model(const IoNetModel& m, std::string_view name) {
    std::ostringstream out;
    out << "ionet " << name << " {\n  states: ";
    emit_names(out, m.state_names());
    out << ";\n  transitions:\n";
    for (const IoTransition& t : m.transitions())
        out << "    " << m.state_name(t.source) << " @ "
            << m.state_name(t.observed) << " -> " << m.state_name(t.target)
            << ";\n";
    out << "}\n";
    return out.str();
}

std::string emit_cube(const DslCube& cube, const DslModel& model) {
    std::span<const std::string> names =
        model.rbn()     ? model.rbn()->state_names()
        : model.asms()  ? model.asms()->state_names()
                        : model.ionet()->state_names();

    // the most frequent range becomes the default entry
    std::map<std::string, std::size_t> freq;
    std::vector<std::string> ranges(names.size());
    for (std::size_t q = 0; q < names.size(); ++q) {
        ranges[q] = range_text(cube.bounds.lower(static_cast<StateId>(q)),
                               cube.bounds.upper(static_cast<StateId>(q)));
        ++freq[ranges[q]];
    }
    std::string dflt = "0..0";
    std::size_t best = 0;
    for (const auto& [text, n] : freq)
        if (n > best) {
            best = n;
            dflt = text;
        }

    std::ostringstream out;
    out << "cube " << cube.name << " of " << cube.model_name << " {\n";
    for (std::size_t q = 0; q < names.size(); ++q)
        if (ranges[q] != dflt)
            out << "  " << names[q] << ": " << ranges[q] << ";\n";
    out << "  default: " << dflt << ";\n";
    if (cube.reg) {
        const AsmsModel* asms = model.asms();
        out << "  register: " << asms->letter_name(*cube.reg) << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string emit_document(const DslDocument& doc) {
    std::ostringstream out;
    bool first = true;
    for (const DslModel& m : doc.models) {
        if (!first) out << "\n";
        first = false;
        if (m.rbn())
            out << emit_model(*m.rbn(), m.name);
        else if (m.asms())
            out << emit_model(*m.asms(), m.name);
        else
            out << emit_model(*m.ionet(), m.name);
    }
    for (const DslCube& c : doc.cubes) {
        if (!first) out << "\n";
        first = false;
        out << emit_cube(c, *doc.find_model(c.model_name));
    }
    return out.str();
}

} // namespace cubereach
