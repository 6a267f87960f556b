#include "ccps/dsl.hpp"

#include "ccps/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ccps {

namespace {

struct Token {
    enum class Kind { Ident, Number, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    std::size_t line = 1, column = 1, offset = 0;
};

const std::set<std::string> kKeywords = {"nil", "tick", "fix", "if",   "then",  "else", "out",
                                         "in",  "read", "write", "true", "false", "on",  "off"};

std::vector<Token> lex(const std::string& text)
{
    static const std::vector<std::string> twoChar = {"<=", ">=", "!=", "&&", "||"};
    static const std::string oneChar = "{}()[]<>=;,.|\\^+-*/:!";
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#' || (c == '/' && i + 1 < text.size() && text[i + 1] == '/')) {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        t.offset = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
            t.kind = Token::Kind::Ident;
            t.text = text.substr(i, j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j + 1 < text.size() && text[j] == '.' && std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
                ++j;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            }
            t.kind = Token::Kind::Number;
            t.text = text.substr(i, j - i);
        } else {
            t.kind = Token::Kind::Punct;
            for (const auto& p : twoChar)
                if (text.compare(i, 2, p) == 0) t.text = p;
            if (t.text.empty()) {
                if (oneChar.find(c) == std::string::npos)
                    throw ParseError(line, col, std::string("unexpected character '") + c + "'", {});
                t.text = std::string(1, c);
            }
        }
        advance(t.text.size());
        out.push_back(std::move(t));
    }
    Token end;
    end.line = line;
    end.column = col;
    end.offset = text.size();
    out.push_back(end);
    return out;
}

struct Definition {
    std::vector<Token> tokens;
    std::string source;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, const std::map<std::string, Definition>* defs = nullptr)
        : tokens_(std::move(tokens)), defs_(defs)
    {
    }

    /// Unknown process identifiers become free process variables.
    bool lenient = false;
    std::vector<std::string> dataScope;
    std::vector<std::string> procScope;
    std::vector<std::string> expanding;

    const Token& peek(std::size_t k = 0) const { return tokens_[std::min(pos_ + k, tokens_.size() - 1)]; }
    bool atEnd() const { return peek().kind == Token::Kind::End; }
    bool isPunct(const std::string& p, std::size_t k = 0) const
    {
        return peek(k).kind == Token::Kind::Punct && peek(k).text == p;
    }
    bool isWord(const std::string& w, std::size_t k = 0) const
    {
        return peek(k).kind == Token::Kind::Ident && peek(k).text == w;
    }
    const Token& next() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }
    std::size_t position() const { return pos_; }
    void rewind(std::size_t pos) { pos_ = pos; }

    [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected) const
    {
        fail(peek(), message, std::move(expected));
    }
    [[noreturn]] static void fail(const Token& at, const std::string& message, std::vector<std::string> expected)
    {
        throw ParseError(at.line, at.column, message, std::move(expected));
    }
    std::string describe() const
    {
        const Token& t = peek();
        return t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    }

    void expectPunct(const std::string& p)
    {
        if (!isPunct(p)) fail("unexpected " + describe(), {p});
        next();
    }
    void expectWord(const std::string& w)
    {
        if (!isWord(w)) fail("unexpected " + describe(), {w});
        next();
    }
    void expectEnd()
    {
        if (!atEnd()) fail("unexpected " + describe(), {"end of input"});
    }
    /// A non-keyword identifier.
    const Token& name(const std::string& what)
    {
        if (peek().kind != Token::Kind::Ident || kKeywords.count(peek().text))
            fail("expected " + what + ", found " + describe(), {what});
        return next();
    }

    Rational number()
    {
        bool negative = false;
        if (isPunct("-")) {
            next();
            negative = true;
        }
        if (peek().kind != Token::Kind::Number) fail("expected a number, found " + describe(), {"number"});
        Rational r = parse_rational(next().text);
        if (isPunct("/")) {
            next();
            if (peek().kind != Token::Kind::Number) fail("expected a denominator, found " + describe(), {"number"});
            const Token& d = next();
            Rational den = parse_rational(d.text);
            if (den == 0) fail(d, "zero denominator", {});
            r /= den;
        }
        return negative ? Rational(-r) : r;
    }

    Value value()
    {
        if (isWord("on")) return next(), on();
        if (isWord("off")) return next(), off();
        if (isPunct("(") && isPunct(")", 1)) {
            next();
            next();
            return Value(Unit{});
        }
        if (peek().kind == Token::Kind::Ident && !kKeywords.count(peek().text)) return Value(Name{next().text});
        if (peek().kind == Token::Kind::Number || isPunct("-")) return Value(number());
        fail("expected a value, found " + describe(), {"number", "on", "off", "name", "()"});
    }

    Interval interval()
    {
        bool loOpen = false, hiOpen = false;
        if (isPunct("(")) loOpen = true;
        else if (!isPunct("[")) fail("expected an interval, found " + describe(), {"[", "("});
        next();
        Rational lo = number();
        expectPunct(",");
        Rational hi = number();
        if (isPunct(")")) hiOpen = true;
        else if (!isPunct("]")) fail("unexpected " + describe(), {"]", ")"});
        next();
        return Interval(lo, hi, loOpen, hiOpen);
    }

    // -- expressions --------------------------------------------------------

    ExprPtr expr()
    {
        ExprPtr e = term();
        while (isPunct("+") || isPunct("-")) {
            bool plus = next().text == "+";
            ExprPtr r = term();
            e = plus ? Expr::add(e, r) : Expr::sub(e, r);
        }
        return e;
    }

    ExprPtr term()
    {
        ExprPtr e = factor();
        while (isPunct("*")) {
            next();
            e = Expr::mul(e, factor());
        }
        return e;
    }

    ExprPtr factor()
    {
        if (isPunct("-")) {
            next();
            ExprPtr inner = factor();
            if (inner->kind() == Expr::Kind::Literal && inner->value().isReal())
                return Expr::literal(Value(Rational(-inner->value().real())));
            return Expr::neg(inner);
        }
        return atom();
    }

    ExprPtr atom()
    {
        if (isPunct("(") && !isPunct(")", 1)) {
            next();
            ExprPtr e = expr();
            expectPunct(")");
            return e;
        }
        if (peek().kind == Token::Kind::Ident && !kKeywords.count(peek().text)) {
            const std::string& id = next().text;
            if (std::find(dataScope.begin(), dataScope.end(), id) != dataScope.end()) return Expr::var(id);
            return Expr::literal(Value(Name{id}));
        }
        if (peek().kind == Token::Kind::Number) return Expr::literal(Value(number()));
        if (isWord("on") || isWord("off") || isPunct("(")) return Expr::literal(value());
        fail("expected an expression, found " + describe(), {"number", "variable", "name", "on", "off", "("});
    }

    // -- guards -------------------------------------------------------------

    BoolPtr guard()
    {
        BoolPtr b = conjunction();
        while (isPunct("||")) {
            next();
            b = BoolExpr::disj(b, conjunction());
        }
        return b;
    }

    BoolPtr conjunction()
    {
        BoolPtr b = negation();
        while (isPunct("&&")) {
            next();
            b = BoolExpr::conj(b, negation());
        }
        return b;
    }

    BoolPtr negation()
    {
        if (isPunct("!")) {
            next();
            return BoolExpr::negate(negation());
        }
        if (isWord("true")) return next(), BoolExpr::constant(true);
        if (isWord("false")) return next(), BoolExpr::constant(false);
        if (isPunct("(")) {
            std::size_t saved = position();
            try {
                next();
                BoolPtr b = guard();
                expectPunct(")");
                if (!startsArithmeticOrComparison()) return b;
            } catch (const ParseError&) {
            }
            rewind(saved);
        }
        return comparison();
    }

    bool startsArithmeticOrComparison() const
    {
        for (const char* p : {"<", "<=", ">", ">=", "=", "!=", "+", "-", "*"})
            if (isPunct(p)) return true;
        return false;
    }

    BoolPtr comparison()
    {
        ExprPtr lhs = expr();
        static const std::vector<std::pair<std::string, CmpOp>> ops = {
            {"<", CmpOp::Lt}, {"<=", CmpOp::Le}, {">", CmpOp::Gt}, {">=", CmpOp::Ge}, {"=", CmpOp::Eq}, {"!=", CmpOp::Ne}};
        for (const auto& [text, op] : ops) {
            if (isPunct(text)) {
                next();
                return BoolExpr::cmp(op, lhs, expr());
            }
        }
        fail("expected a comparison, found " + describe(), {"<", "<=", ">", ">=", "=", "!="});
    }

    // -- processes ----------------------------------------------------------

    ProcPtr process()
    {
        ProcPtr p = restricted();
        while (isPunct("|")) {
            next();
            p = par(p, restricted());
        }
        return p;
    }

    ProcPtr restricted()
    {
        ProcPtr p = unary();
        while (isPunct("\\")) {
            next();
            p = restrict(p, name("channel").text);
        }
        return p;
    }

    bool startsPrefix() const { return isWord("out") || isWord("in") || isWord("read") || isWord("write"); }

    Prefix prefix()
    {
        const std::string kw = next().text;
        if (kw == "out") {
            std::string channel = name("channel").text;
            if (!isPunct("<")) return Prefix::signal(channel);
            next();
            ExprPtr e = expr();
            expectPunct(">");
            return Prefix::send(channel, e);
        }
        if (kw == "in") {
            std::string channel = name("channel").text;
            if (!isPunct("(")) return Prefix::await(channel);
            next();
            std::string var = name("variable").text;
            expectPunct(")");
            return Prefix::receive(channel, var);
        }
        if (kw == "read") {
            std::string sensor = name("sensor").text;
            expectPunct("(");
            std::string var = name("variable").text;
            expectPunct(")");
            return Prefix::read(var, sensor);
        }
        ExprPtr e = atom();
        expectPunct("(");
        std::string actuator = name("actuator").text;
        expectPunct(")");
        return Prefix::write(e, actuator);
    }

    ProcPtr underBinder(const Prefix& p, bool full)
    {
        if (p.binds()) dataScope.push_back(p.var);
        ProcPtr body = full ? process() : unary();
        if (p.binds()) dataScope.pop_back();
        return body;
    }

    ProcPtr unary()
    {
        const Token at = peek();
        if (isWord("nil")) return next(), nil();
        if (isWord("tick")) {
            next();
            unsigned k = 1;
            if (isPunct("^")) {
                next();
                if (peek().kind != Token::Kind::Number || peek().text.find('.') != std::string::npos)
                    fail("expected a tick count, found " + describe(), {"number"});
                const Token& n = next();
                k = static_cast<unsigned>(std::stoul(n.text));
                if (k == 0) fail(n, "tick count must be positive", {});
            }
            expectPunct(".");
            return ticks(k, unary());
        }
        if (isWord("if")) {
            next();
            BoolPtr g = guard();
            expectWord("then");
            ProcPtr a = process();
            expectWord("else");
            return ite(g, a, unary());
        }
        if (isPunct("[")) {
            next();
            if (!startsPrefix()) fail("expected a prefix, found " + describe(), {"out", "in", "read", "write"});
            Prefix p = prefix();
            expectPunct(".");
            ProcPtr cont = underBinder(p, true);
            expectPunct("]");
            return timeout(p, cont, unary());
        }
        if (startsPrefix()) {
            Prefix p = prefix();
            expectPunct(".");
            return prefixed(p, underBinder(p, false));
        }
        if (isWord("fix")) {
            next();
            std::string var = name("process variable").text;
            expectPunct(".");
            procScope.push_back(var);
            ProcPtr body = unary();
            procScope.pop_back();
            try {
                return fix(var, body);
            } catch (const TermError& e) {
                fail(at, e.what(), {});
            }
        }
        if (isPunct("(")) {
            next();
            ProcPtr p = process();
            expectPunct(")");
            return p;
        }
        if (peek().kind == Token::Kind::Ident && !kKeywords.count(peek().text)) {
            const std::string id = next().text;
            if (std::find(procScope.begin(), procScope.end(), id) != procScope.end()) return pvar(id);
            if (!lenient && defs_ && defs_->count(id)) return expand(at, id);
            if (lenient) return pvar(id);
            fail(at, "unknown process '" + id + "'", {"process name", "bound process variable"});
        }
        fail("expected a process, found " + describe(),
             {"nil", "tick", "if", "fix", "[", "(", "out", "in", "read", "write", "process name"});
    }

    ProcPtr expand(const Token& at, const std::string& id)
    {
        if (std::find(expanding.begin(), expanding.end(), id) != expanding.end())
            fail(at, "definition '" + id + "' refers to itself outside a fix", {});
        Parser sub(defs_->at(id).tokens, defs_);
        sub.dataScope = dataScope;
        sub.procScope = procScope;
        sub.expanding = expanding;
        sub.expanding.push_back(id);
        ProcPtr p = sub.process();
        sub.expectEnd();
        return p;
    }

    /// Tokens up to (excluding) the next ';', followed by an End token at the ';'.
    std::vector<Token> until(const std::string& stop)
    {
        std::vector<Token> out;
        while (!isPunct(stop)) {
            if (atEnd()) fail("unexpected end of input", {stop});
            out.push_back(next());
        }
        Token end = peek();
        end.kind = Token::Kind::End;
        end.text.clear();
        out.push_back(end);
        next();
        return out;
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    const std::map<std::string, Definition>* defs_;
};

struct Sections {
    std::map<std::string, VariableDecl> variables;
    std::map<std::string, Value> actuators;
    std::map<std::string, SensorDecl> sensors;
    std::map<std::string, Definition> definitions;
    std::vector<std::pair<std::string, std::string>> definitionOrder;
    InputAlphabet inputs;
    std::optional<std::vector<Token>> system;
    std::optional<std::string> systemName;
    std::set<std::string> seenBlocks;
};

void declareOnce(std::set<std::string>& seen, const Token& t, const std::string& what)
{
    if (!seen.insert(t.text).second) Parser::fail(t, "duplicate " + what + " '" + t.text + "'", {});
}

void parseVars(Parser& p, Sections& s, std::set<std::string>& names)
{
    while (!p.isPunct("}")) {
        const Token& n = p.name("variable");
        declareOnce(names, n, "declaration");
        VariableDecl d;
        p.expectPunct("=");
        d.initial = p.number();
        while (p.isPunct(",")) {
            p.next();
            if (p.isWord("uncertainty")) {
                p.next();
                d.uncertainty = p.number();
            } else if (p.isWord("invariant")) {
                p.next();
                d.invariant = p.interval();
            } else {
                p.fail("unexpected " + p.describe(), {"uncertainty", "invariant"});
            }
        }
        p.expectPunct(";");
        s.variables[n.text] = d;
    }
}

void parseDynamics(Parser& p, Sections& s)
{
    std::set<std::string> seen;
    while (!p.isPunct("}")) {
        const Token& n = p.name("variable");
        if (!s.variables.count(n.text)) Parser::fail(n, "dynamics for undeclared variable '" + n.text + "'", {});
        declareOnce(seen, n, "dynamics for");
        DriftTable table;
        p.expectPunct("{");
        while (!p.isPunct("}")) {
            if (p.isWord("default")) {
                p.next();
                p.expectPunct(":");
                table.fallback = p.number();
                p.expectPunct(";");
                continue;
            }
            p.expectWord("when");
            DriftTable::Row row;
            for (;;) {
                const Token& a = p.name("actuator");
                if (!s.actuators.count(a.text)) Parser::fail(a, "undeclared actuator '" + a.text + "'", {});
                p.expectPunct("=");
                row.when.emplace_back(a.text, p.value());
                if (!p.isPunct(",")) break;
                p.next();
            }
            p.expectPunct(":");
            row.drift = p.number();
            p.expectPunct(";");
            table.rows.push_back(std::move(row));
        }
        p.next();
        s.variables[n.text].dynamics = std::move(table);
    }
}

Sections parseSections(Parser& p, const std::string& text)
{
    Sections s;
    std::set<std::string> deviceNames;
    const std::vector<std::string> blocks = {"vars", "actuators", "sensors", "dynamics", "inputs", "process", "system"};
    while (!p.atEnd()) {
        const Token kw = p.peek();
        if (kw.kind != Token::Kind::Ident || std::find(blocks.begin(), blocks.end(), kw.text) == blocks.end())
            p.fail("unexpected " + p.describe(), blocks);
        p.next();
        if (kw.text == "process") {
            const Token& n = p.name("process name");
            if (s.definitions.count(n.text)) Parser::fail(n, "duplicate process '" + n.text + "'", {});
            p.expectPunct("=");
            std::size_t from = p.peek().offset;
            Definition d;
            d.tokens = p.until(";");
            std::size_t to = d.tokens.back().offset;
            d.source = text.substr(from, to - from);
            while (!d.source.empty() && std::isspace(static_cast<unsigned char>(d.source.back()))) d.source.pop_back();
            s.definitionOrder.emplace_back(n.text, d.source);
            s.definitions[n.text] = std::move(d);
            continue;
        }
        if (kw.text == "system") {
            if (s.system) Parser::fail(kw, "duplicate system entry", {});
            if (p.peek().kind == Token::Kind::Ident && !kKeywords.count(p.peek().text) && p.isPunct(";", 1))
                s.systemName = p.peek().text;
            s.system = p.until(";");
            continue;
        }
        if (!s.seenBlocks.insert(kw.text).second) Parser::fail(kw, "duplicate block '" + kw.text + "'", {});
        p.expectPunct("{");
        if (kw.text == "vars") {
            parseVars(p, s, deviceNames);
        } else if (kw.text == "actuators") {
            while (!p.isPunct("}")) {
                const Token& n = p.name("actuator");
                declareOnce(deviceNames, n, "declaration");
                p.expectPunct("=");
                s.actuators[n.text] = p.value();
                p.expectPunct(";");
            }
        } else if (kw.text == "sensors") {
            while (!p.isPunct("}")) {
                const Token& n = p.name("sensor");
                declareOnce(deviceNames, n, "declaration");
                p.expectWord("measures");
                const Token& target = p.name("variable");
                SensorDecl d;
                d.target = target.text;
                if (p.isPunct(",")) {
                    p.next();
                    p.expectWord("error");
                    d.error = p.number();
                }
                p.expectPunct(";");
                if (!s.variables.count(d.target))
                    Parser::fail(target, "sensor measures undeclared variable '" + d.target + "'", {});
                s.sensors[n.text] = d;
            }
        } else if (kw.text == "dynamics") {
            parseDynamics(p, s);
        } else {
            while (!p.isPunct("}")) {
                std::string channel = p.name("channel").text;
                if (!p.isPunct(":")) {
                    s.inputs.emplace_back(channel, Value(Unit{}));
                } else {
                    p.next();
                    for (;;) {
                        s.inputs.emplace_back(channel, p.value());
                        if (!p.isPunct(",")) break;
                        p.next();
                    }
                }
                p.expectPunct(";");
            }
        }
        p.next();
    }
    if (!s.system) p.fail("missing system entry", {"system"});
    return s;
}

} // namespace

Model parse_model(const std::string& text)
{
    Parser top(lex(text));
    Sections s = parseSections(top, text);

    for (const auto& [name, def] : s.definitions) {
        Parser check(def.tokens, &s.definitions);
        check.lenient = true;
        check.process();
        check.expectEnd();
    }
    Parser sys(*s.system, &s.definitions);
    ProcPtr proc = sys.process();
    sys.expectEnd();

    PhysicalEnv env;
    try {
        env = PhysicalEnv::make(s.variables, s.actuators, s.sensors);
    } catch (const WellFormednessError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(1, 1, e.what(), {});
    }
    Model m;
    m.system = make_cps(env, proc);
    m.inputs = std::move(s.inputs);
    if (s.systemName) m.systemName = *s.systemName;
    m.definitions = std::move(s.definitionOrder);
    return m;
}

Model load_model(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

ProcPtr parse_process(const std::string& text)
{
    Parser p(lex(text));
    ProcPtr proc = p.process();
    p.expectEnd();
    if (!proc->isClosed()) throw TermError("process is not closed: " + print(proc));
    return proc;
}

std::string print_model(const Model& model)
{
    const PhysicalEnv& env = model.system.env;
    const Plant& plant = env.plant();
    std::ostringstream out;
    auto block = [&](const std::string& title, const std::string& body) {
        if (!body.empty()) out << title << " {\n" << body << "}\n\n";
    };
    std::ostringstream vars, acts, sensors, dynamics;
    for (std::size_t i = 0; i < plant.variables.size(); ++i) {
        vars << "  " << plant.variables[i] << " = " << to_string(env.state()[i]);
        if (plant.uncertainty[i] != 0) vars << ", uncertainty " << to_string(plant.uncertainty[i]);
        if (plant.invariant[i]) vars << ", invariant " << plant.invariant[i]->str();
        vars << ";\n";
    }
    for (std::size_t i = 0; i < plant.actuators.size(); ++i)
        acts << "  " << plant.actuators[i] << " = " << env.actuators()[i].str() << ";\n";
    for (std::size_t i = 0; i < plant.sensors.size(); ++i) {
        sensors << "  " << plant.sensors[i] << " measures " << plant.variables[plant.sensorTarget[i]];
        if (plant.sensorError[i] != 0) sensors << ", error " << to_string(plant.sensorError[i]);
        sensors << ";\n";
    }
    for (std::size_t i = 0; i < plant.variables.size(); ++i) {
        const DriftTable& t = plant.dynamics[i];
        if (t.rows.empty() && t.fallback == 0) continue;
        dynamics << "  " << plant.variables[i] << " {\n";
        for (const auto& row : t.rows) {
            dynamics << "    when ";
            for (std::size_t k = 0; k < row.when.size(); ++k)
                dynamics << (k ? ", " : "") << row.when[k].first << " = " << row.when[k].second.str();
            dynamics << ": " << to_string(row.drift) << ";\n";
        }
        dynamics << "    default: " << to_string(t.fallback) << ";\n  }\n";
    }
    block("vars", vars.str());
    block("actuators", acts.str());
    block("sensors", sensors.str());
    block("dynamics", dynamics.str());
    if (!model.inputs.empty()) {
        std::map<std::string, std::vector<Value>> byChannel;
        for (const auto& [c, v] : model.inputs) byChannel[c].push_back(v);
        out << "inputs {\n";
        for (const auto& [c, values] : byChannel) {
            out << "  " << c;
            if (!(values.size() == 1 && values[0].isUnit())) {
                out << ":";
                for (std::size_t k = 0; k < values.size(); ++k) out << (k ? ", " : " ") << values[k].str();
            }
            out << ";\n";
        }
        out << "}\n\n";
    }
    out << "process " << model.systemName << " = " << print(model.system.proc) << ";\n";
    out << "\nsystem " << model.systemName << ";\n";
    return out.str();
}

bool same_model(const Model& a, const Model& b)
{
    auto sorted = [](InputAlphabet in) {
        std::sort(in.begin(), in.end(), [](const auto& x, const auto& y) {
            return x.first != y.first ? x.first < y.first : x.second < y.second;
        });
        return in;
    };
    return same_system(a.system, b.system) && sorted(a.inputs) == sorted(b.inputs);
}

} // namespace ccps
