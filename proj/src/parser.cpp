#include "deploy/parser.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace deploy {

namespace {

struct Token {
    enum Type { LParen, RParen, Symbol, End } type = End;
    std::string text;
    int line = 1;
    int column = 1;
};

bool isSymbolChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':' ||
           c == '=' || c == '.' || c == '?';
}

class Tokenizer {
public:
    explicit Tokenizer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token next() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
                continue;
            }
            if (c == '\n') {
                ++line_;
                column_ = 1;
                ++pos_;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++column_;
                ++pos_;
                continue;
            }
            break;
        }
        current_.line = line_;
        current_.column = column_;
        if (pos_ >= text_.size()) {
            current_.type = Token::End;
            current_.text.clear();
            return;
        }
        char c = text_[pos_];
        if (c == '(') {
            current_.type = Token::LParen;
            current_.text = "(";
            ++pos_;
            ++column_;
            return;
        }
        if (c == ')') {
            current_.type = Token::RParen;
            current_.text = ")";
            ++pos_;
            ++column_;
            return;
        }
        if (!isSymbolChar(c)) {
            throw ParseError(line_, column_,
                             std::string("unexpected character '") + c + "'");
        }
        size_t start = pos_;
        while (pos_ < text_.size() && isSymbolChar(text_[pos_])) {
            ++pos_;
            ++column_;
        }
        current_.type = Token::Symbol;
        current_.text = text_.substr(start, pos_ - start);
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
    Token current_;
};

std::string lowered(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[noreturn]] void fail(const Token& t, const std::string& message) {
    throw ParseError(t.line, t.column, message);
}

Token expect(Tokenizer& tz, Token::Type type, const std::string& what) {
    Token t = tz.next();
    if (t.type != type) {
        fail(t, "expected " + what + ", got '" + (t.type == Token::End ? "end of input" : t.text) +
                   "'");
    }
    return t;
}

Token expectSymbol(Tokenizer& tz, const std::string& what) {
    return expect(tz, Token::Symbol, what);
}

// Keyword match, case-insensitive.
void expectKeyword(Tokenizer& tz, const std::string& keyword) {
    Token t = expectSymbol(tz, "'" + keyword + "'");
    if (lowered(t.text) != keyword) fail(t, "expected '" + keyword + "', got '" + t.text + "'");
}

int parseNumber(const Token& t) {
    if (t.type != Token::Symbol || t.text.empty() ||
        !std::all_of(t.text.begin(), t.text.end(),
                     [](unsigned char c) { return std::isdigit(c); })) {
        fail(t, "expected a non-negative number, got '" + t.text + "'");
    }
    try {
        return std::stoi(t.text);
    } catch (const std::exception&) {
        fail(t, "number '" + t.text + "' is out of range");
    }
}

// Mutable build state while reading :init.
struct ProblemBuilder {
    std::string name;
    std::map<std::string, ComponentType> components;
    std::set<std::string> ports;
    std::map<InstanceId, InitialInstance> instances;
    std::map<InstanceId, Token> instanceTokens;
    std::set<ActiveProvide> actives;
    std::set<Binding> bindings;
    std::optional<int> counterInit;
    std::vector<Goal> goals;
    std::set<std::string> seenFacts;

    ComponentType& componentAt(const Token& t) {
        auto it = components.find(t.text);
        if (it == components.end()) fail(t, "undeclared component '" + t.text + "'");
        return it->second;
    }

    void checkPort(const Token& t) {
        if (ports.count(t.text) == 0) fail(t, "undeclared port '" + t.text + "'");
    }

    InitialInstance& instanceAt(const Token& t, InstanceId id) {
        auto it = instances.find(id);
        if (it == instances.end()) {
            fail(t, "instance " + std::to_string(id) + " is not declared with an (instance N) fact");
        }
        return it->second;
    }

    void dedupeFact(const Token& at, const std::string& key) {
        if (!seenFacts.insert(key).second) fail(at, "duplicate fact " + key);
    }
};

void parseObjects(Tokenizer& tz, ProblemBuilder& b) {
    expect(tz, Token::LParen, "'('");
    expectKeyword(tz, ":objects");
    std::vector<Token> group;
    while (true) {
        Token t = tz.next();
        if (t.type == Token::RParen) {
            if (!group.empty()) fail(group.back(), "object list is missing its '- type' suffix");
            break;
        }
        if (t.type != Token::Symbol) fail(t, "expected object name or ')'");
        if (t.text == "-") {
            if (group.empty()) fail(t, "'-' with no object names before it");
            Token typeTok = expectSymbol(tz, "object type");
            std::string type = lowered(typeTok.text);
            for (const Token& nameTok : group) {
                if (b.components.count(nameTok.text) || b.ports.count(nameTok.text)) {
                    fail(nameTok, "duplicate object '" + nameTok.text + "'");
                }
                if (type == "component") {
                    ComponentType c;
                    c.name = nameTok.text;
                    b.components.emplace(nameTok.text, std::move(c));
                } else if (type == "port") {
                    b.ports.insert(nameTok.text);
                } else {
                    fail(typeTok, "unknown object type '" + typeTok.text +
                                      "' (expected component or port)");
                }
            }
            group.clear();
            continue;
        }
        group.push_back(t);
    }
}

void parseStatePortFact(Tokenizer& tz, ProblemBuilder& b, const Token& head,
                        LifecycleState state, bool isRequire) {
    Token componentTok = expectSymbol(tz, "component name");
    Token portTok = expectSymbol(tz, "port name");
    expect(tz, Token::RParen, "')'");
    ComponentType& c = b.componentAt(componentTok);
    b.checkPort(portTok);
    b.dedupeFact(head, "(" + head.text + " " + componentTok.text + " " + portTok.text + ")");
    PortSet& target = isRequire ? c.requirePorts[stateRank(state)]
                                : c.providePorts[stateRank(state)];
    const PortSet& opposite = isRequire ? c.providePorts[stateRank(state)]
                                        : c.requirePorts[stateRank(state)];
    if (opposite.count(portTok.text) > 0) {
        fail(portTok, "component '" + componentTok.text + "' both requires and provides port '" +
                          portTok.text + "' in state " + stateName(state));
    }
    target.insert(portTok.text);
}

void parseCounterFact(Tokenizer& tz, ProblemBuilder& b, const Token& head) {
    expect(tz, Token::LParen, "'('");
    expectKeyword(tz, "instance-number");
    expect(tz, Token::RParen, "')'");
    Token value = expectSymbol(tz, "counter value");
    expect(tz, Token::RParen, "')'");
    if (b.counterInit.has_value()) fail(head, "duplicate (= (instance-number) ...) fact");
    b.counterInit = parseNumber(value);
}

void parseInit(Tokenizer& tz, ProblemBuilder& b) {
    expect(tz, Token::LParen, "'('");
    expectKeyword(tz, ":init");
    std::map<InstanceId, Token> stateFacts;
    while (true) {
        if (tz.peek().type == Token::RParen) {
            tz.next();
            break;
        }
        expect(tz, Token::LParen, "'(' or ')'");
        Token head = expectSymbol(tz, "predicate name");
        std::string predicate = lowered(head.text);
        if (predicate == "installed-require") {
            parseStatePortFact(tz, b, head, LifecycleState::Installed, true);
        } else if (predicate == "installed-provide") {
            parseStatePortFact(tz, b, head, LifecycleState::Installed, false);
        } else if (predicate == "running-require") {
            parseStatePortFact(tz, b, head, LifecycleState::Running, true);
        } else if (predicate == "running-provide") {
            parseStatePortFact(tz, b, head, LifecycleState::Running, false);
        } else if (predicate == "=") {
            parseCounterFact(tz, b, head);
        } else if (predicate == "instance") {
            Token idTok = expectSymbol(tz, "instance id");
            expect(tz, Token::RParen, "')'");
            InstanceId id = parseNumber(idTok);
            if (b.instances.count(id)) fail(idTok, "duplicate (instance " + idTok.text + ")");
            InitialInstance ii;
            ii.id = id;
            b.instances.emplace(id, ii);
            b.instanceTokens.emplace(id, idTok);
        } else if (predicate == "type") {
            Token idTok = expectSymbol(tz, "instance id");
            Token componentTok = expectSymbol(tz, "component name");
            expect(tz, Token::RParen, "')'");
            InstanceId id = parseNumber(idTok);
            InitialInstance& ii = b.instanceAt(idTok, id);
            b.componentAt(componentTok);
            if (!ii.component.empty()) {
                fail(idTok, "instance " + idTok.text + " already has a type fact");
            }
            ii.component = componentTok.text;
        } else if (predicate == "installed" || predicate == "running") {
            Token idTok = expectSymbol(tz, "instance id");
            expect(tz, Token::RParen, "')'");
            InstanceId id = parseNumber(idTok);
            InitialInstance& ii = b.instanceAt(idTok, id);
            if (stateFacts.count(id)) {
                fail(idTok, "instance " + idTok.text + " has more than one state fact");
            }
            stateFacts.emplace(id, idTok);
            ii.state = predicate == "installed" ? LifecycleState::Installed
                                                : LifecycleState::Running;
        } else if (predicate == "active") {
            Token portTok = expectSymbol(tz, "port name");
            Token idTok = expectSymbol(tz, "instance id");
            expect(tz, Token::RParen, "')'");
            b.checkPort(portTok);
            InstanceId id = parseNumber(idTok);
            b.instanceAt(idTok, id);
            if (!b.actives.insert({portTok.text, id}).second) {
                fail(head, "duplicate (active " + portTok.text + " " + idTok.text + ")");
            }
        } else if (predicate == "bound") {
            Token portTok = expectSymbol(tz, "port name");
            Token reqTok = expectSymbol(tz, "requirer id");
            Token provTok = expectSymbol(tz, "provider id");
            expect(tz, Token::RParen, "')'");
            b.checkPort(portTok);
            InstanceId r = parseNumber(reqTok);
            InstanceId q = parseNumber(provTok);
            b.instanceAt(reqTok, r);
            b.instanceAt(provTok, q);
            if (!b.bindings.insert({portTok.text, r, q}).second) {
                fail(head, "duplicate (bound " + portTok.text + " " + reqTok.text + " " +
                               provTok.text + ")");
            }
        } else {
            fail(head, "unknown predicate '" + head.text + "'");
        }
    }
    if (!b.counterInit.has_value()) {
        fail(tz.peek(), ":init is missing the (= (instance-number) N) fact");
    }
}

void parseHtn(Tokenizer& tz, ProblemBuilder& b) {
    expect(tz, Token::LParen, "'('");
    expectKeyword(tz, ":htn");
    expectKeyword(tz, ":tasks");
    while (tz.peek().type == Token::LParen) {
        tz.next();
        if (tz.peek().type == Token::RParen) {  // "()" stands for no tasks
            tz.next();
            continue;
        }
        Token kindTok = expectSymbol(tz, "task name");
        auto kind = goalKindFromName(lowered(kindTok.text));
        if (!kind) fail(kindTok, "unknown task '" + kindTok.text + "'");
        Token componentTok = expectSymbol(tz, "component name");
        expect(tz, Token::RParen, "')'");
        b.componentAt(componentTok);
        b.goals.push_back({*kind, componentTok.text});
    }
    expectKeyword(tz, ":ordering");
    expect(tz, Token::LParen, "'('");
    Token t = tz.next();
    if (t.type != Token::RParen) fail(t, "non-empty :ordering is not supported");
    expectKeyword(tz, ":constraints");
    expect(tz, Token::LParen, "'('");
    t = tz.next();
    if (t.type != Token::RParen) fail(t, "non-empty :constraints is not supported");
    expect(tz, Token::RParen, "')'");
}

Problem finishProblem(ProblemBuilder& b, const Token& atEnd) {
    Problem p;
    p.name = b.name;
    auto catalog = std::make_shared<Catalog>();
    for (auto& [name, component] : b.components) {
        catalog->components.push_back(component);  // map iteration is name-sorted
    }
    catalog->ports = b.ports;
    p.catalog = catalog;
    for (auto& [id, ii] : b.instances) {
        if (ii.component.empty()) {
            const Token& t = b.instanceTokens.at(id);
            fail(t, "instance " + std::to_string(id) + " has no (type " + std::to_string(id) +
                        " C) fact");
        }
        if (id >= *b.counterInit) {
            const Token& t = b.instanceTokens.at(id);
            fail(t, "counter init " + std::to_string(*b.counterInit) +
                        " does not dominate instance id " + std::to_string(id));
        }
        p.instances.push_back(ii);
    }
    p.actives = b.actives;
    p.bindings = b.bindings;
    p.counterInit = *b.counterInit;
    p.goals = b.goals;

    const std::vector<Violation> violations = wellFormednessViolations(initialConfiguration(p));
    if (!violations.empty()) {
        fail(atEnd, "initial configuration is not well-formed: " + violations.front().message);
    }
    return p;
}

}  // namespace

Problem parseProblem(const std::string& text) {
    Tokenizer tz(text);
    ProblemBuilder b;
    expect(tz, Token::LParen, "'('");
    expectKeyword(tz, "define");
    expect(tz, Token::LParen, "'('");
    expectKeyword(tz, "problem");
    b.name = expectSymbol(tz, "problem name").text;
    expect(tz, Token::RParen, "')'");
    expect(tz, Token::LParen, "'('");
    expectKeyword(tz, ":domain");
    Token domainTok = expectSymbol(tz, "domain name");
    if (domainTok.text != "deployment") {
        fail(domainTok, "expected domain 'deployment', got '" + domainTok.text + "'");
    }
    expect(tz, Token::RParen, "')'");
    parseObjects(tz, b);
    parseInit(tz, b);
    parseHtn(tz, b);
    Token closing = expect(tz, Token::RParen, "')'");
    Token trailing = tz.next();
    if (trailing.type != Token::End) fail(trailing, "trailing input after problem definition");
    return finishProblem(b, closing);
}

std::string renderProblem(const Problem& problem) {
    std::ostringstream os;
    os << "(define (problem " << problem.name << ")\n";
    os << "  (:domain deployment)\n";
    os << "  (:objects\n";
    if (!problem.catalog->components.empty()) {
        os << "   ";
        for (const ComponentType& c : problem.catalog->components) os << " " << c.name;
        os << " - component\n";
    }
    if (!problem.catalog->ports.empty()) {
        os << "   ";
        for (const std::string& p : problem.catalog->ports) os << " " << p;
        os << " - port\n";
    }
    os << "  )\n";
    os << "  (:init\n";
    struct Family {
        const char* predicate;
        LifecycleState state;
        bool require;
    };
    static constexpr Family kFamilies[] = {
        {"installed-require", LifecycleState::Installed, true},
        {"running-require", LifecycleState::Running, true},
        {"installed-provide", LifecycleState::Installed, false},
        {"running-provide", LifecycleState::Running, false},
    };
    for (const Family& family : kFamilies) {
        for (const ComponentType& c : problem.catalog->components) {
            const PortSet& ports = family.require ? c.requirePorts[stateRank(family.state)]
                                                  : c.providePorts[stateRank(family.state)];
            for (const std::string& p : ports) {
                os << "    (" << family.predicate << " " << c.name << " " << p << ")\n";
            }
        }
    }
    for (const InitialInstance& ii : problem.instances) {
        os << "    (instance " << ii.id << ")\n";
    }
    for (const InitialInstance& ii : problem.instances) {
        os << "    (type " << ii.id << " " << ii.component << ")\n";
    }
    for (const InitialInstance& ii : problem.instances) {
        if (ii.state != LifecycleState::Uninstalled) {
            os << "    (" << stateName(ii.state) << " " << ii.id << ")\n";
        }
    }
    for (const ActiveProvide& ap : problem.actives) {
        os << "    (active " << ap.first << " " << ap.second << ")\n";
    }
    for (const Binding& b : problem.bindings) {
        os << "    (bound " << b.port << " " << b.requirer << " " << b.provider << ")\n";
    }
    os << "    (= (instance-number) " << problem.counterInit << ")\n";
    os << "  )\n";
    os << "  (:htn\n";
    os << "    :tasks";
    if (problem.goals.empty()) {
        os << " ()";
    } else {
        for (const Goal& g : problem.goals) {
            os << " (" << goalKindName(g.kind) << " " << g.component << ")";
        }
    }
    os << "\n";
    os << "    :ordering ()\n";
    os << "    :constraints ()\n";
    os << "  )\n";
    os << ")\n";
    return os.str();
}

namespace {

// Component resolution for plan tokens: exact catalog name first, then the
// unique-initial scheme of the lettered dialect.
int resolvePlanComponent(const Problem& problem, const Token& t, const std::string& word) {
    int exact = problem.catalog->indexOf(word);
    if (exact >= 0) return exact;
    std::string letters = word;
    while (!letters.empty() && std::isdigit(static_cast<unsigned char>(letters.back()))) {
        letters.pop_back();
    }
    if (letters.empty()) fail(t, "cannot resolve component from token '" + word + "'");
    int match = -1;
    for (size_t i = 0; i < problem.catalog->components.size(); ++i) {
        if (problem.catalog->components[i].name.rfind(letters[0], 0) == 0) {
            if (match >= 0) {
                fail(t, "ambiguous component initial '" + std::string(1, letters[0]) + "'");
            }
            match = static_cast<int>(i);
        }
    }
    if (match < 0) fail(t, "no component matches token '" + word + "'");
    return match;
}

InstanceId parsePlanInstanceToken(const Token& t, const std::string& word) {
    size_t i = 0;
    while (i < word.size() && std::isalpha(static_cast<unsigned char>(word[i]))) ++i;
    if (i == word.size() ||
        !std::all_of(word.begin() + static_cast<long>(i), word.end(),
                     [](unsigned char c) { return std::isdigit(c); })) {
        fail(t, "expected an instance token like w0 or i2, got '" + word + "'");
    }
    try {
        return std::stoi(word.substr(i));
    } catch (const std::exception&) {
        fail(t, "instance id in '" + word + "' is out of range");
    }
}

}  // namespace

Plan parsePlan(const std::string& text, const Problem& problem) {
    Tokenizer tz(text);
    Plan plan;
    int expected = 1;
    while (tz.peek().type != Token::End) {
        Token numberTok = expectSymbol(tz, "step number");
        std::string numberText = numberTok.text;
        if (numberText.empty() || numberText.back() != '.') {
            fail(numberTok, "expected a step number like '1.', got '" + numberText + "'");
        }
        numberText.pop_back();
        Token bare = numberTok;
        bare.text = numberText;
        int number = parseNumber(bare);
        if (number != expected) {
            fail(numberTok, "non-consecutive step numbering: expected " +
                                std::to_string(expected) + ", got " + std::to_string(number));
        }
        ++expected;

        expect(tz, Token::LParen, "'('");
        Token word = expectSymbol(tz, "action name");
        auto kind = actionKindFromName(word.text);
        if (!kind) {
            // Action words are keywords: match them case-insensitively.
            for (ActionKind k :
                 {ActionKind::CreateInstance, ActionKind::Start, ActionKind::Run,
                  ActionKind::Stop, ActionKind::Terminate, ActionKind::Bind,
                  ActionKind::Unbind}) {
                if (lowered(word.text) == lowered(actionKindName(k))) kind = k;
            }
        }
        if (!kind) fail(word, "unknown action '" + word.text + "'");
        DeploymentAction action;
        switch (*kind) {
            case ActionKind::CreateInstance: {
                Token arg = expectSymbol(tz, "component token");
                int idx = resolvePlanComponent(problem, arg, arg.text);
                action = makeCreate(problem.catalog->components[static_cast<size_t>(idx)].name);
                break;
            }
            case ActionKind::Start:
            case ActionKind::Run:
            case ActionKind::Stop:
            case ActionKind::Terminate: {
                Token arg = expectSymbol(tz, "instance token");
                action = makeTransition(*kind, parsePlanInstanceToken(arg, arg.text));
                break;
            }
            case ActionKind::Bind:
            case ActionKind::Unbind: {
                Token portTok = expectSymbol(tz, "port name");
                if (problem.catalog->ports.count(portTok.text) == 0) {
                    fail(portTok, "undeclared port '" + portTok.text + "'");
                }
                Token reqTok = expectSymbol(tz, "requirer token");
                Token provTok = expectSymbol(tz, "provider token");
                InstanceId r = parsePlanInstanceToken(reqTok, reqTok.text);
                InstanceId q = parsePlanInstanceToken(provTok, provTok.text);
                action = *kind == ActionKind::Bind ? makeBind(portTok.text, r, q)
                                                   : makeUnbind(portTok.text, r, q);
                break;
            }
        }
        expect(tz, Token::RParen, "')'");
        plan.steps.push_back(action);
    }
    return plan;
}

std::string renderPlan(const Plan& plan, const Problem& problem, bool numericIds) {
    // Replay the id assignment so instance tokens can carry the component
    // initial of whatever instance they reference.
    std::map<InstanceId, int> componentOf;
    for (const InitialInstance& ii : problem.instances) {
        componentOf[ii.id] = problem.catalog->indexOf(ii.component);
    }
    if (!numericIds) {
        std::set<char> initials;
        for (const ComponentType& c : problem.catalog->components) {
            if (c.name.empty() || !initials.insert(c.name[0]).second) {
                throw ModelError(
                    "component initials are not pairwise distinct; use the numeric-id dialect");
            }
        }
    }
    int nextId = problem.counterInit;
    auto instanceToken = [&](InstanceId id) {
        if (numericIds) return "i" + std::to_string(id);
        auto it = componentOf.find(id);
        if (it == componentOf.end()) {
            throw ModelError("plan references instance " + std::to_string(id) +
                             " before it is created");
        }
        const std::string& name =
            problem.catalog->components[static_cast<size_t>(it->second)].name;
        return name.substr(0, 1) + std::to_string(id);
    };

    std::vector<std::string> lines;
    for (const DeploymentAction& a : plan.steps) {
        std::ostringstream os;
        switch (a.kind) {
            case ActionKind::CreateInstance: {
                int idx = problem.catalog->indexOf(a.component);
                if (idx < 0) throw ModelError("plan creates unknown component '" + a.component + "'");
                InstanceId id = nextId++;
                componentOf[id] = idx;
                if (numericIds) {
                    os << "(createInstance " << a.component << ")";
                } else {
                    os << "(createInstance " << instanceToken(id) << ")";
                }
                break;
            }
            case ActionKind::Start:
            case ActionKind::Run:
            case ActionKind::Stop:
            case ActionKind::Terminate:
                os << "(" << actionKindName(a.kind) << " " << instanceToken(a.instance) << ")";
                break;
            case ActionKind::Bind:
            case ActionKind::Unbind:
                os << "(" << actionKindName(a.kind) << " " << a.port << " "
                   << instanceToken(a.requirer) << " " << instanceToken(a.provider) << ")";
                break;
        }
        lines.push_back(os.str());
    }

    const size_t numberWidth = std::to_string(plan.steps.size()).size() + 1;
    std::ostringstream os;
    for (size_t i = 0; i < lines.size(); ++i) {
        std::string label = std::to_string(i + 1) + ".";
        label.resize(numberWidth, ' ');
        os << label << " " << lines[i] << "\n";
    }
    return os.str();
}

}  // namespace deploy
