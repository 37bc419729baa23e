// elpq: command-line front end.

#include <elpq/asp.hpp>
#include <elpq/digest.hpp>
#include <elpq/elp.hpp>
#include <elpq/error.hpp>
#include <elpq/grounder.hpp>
#include <elpq/parser.hpp>
#include <elpq/quant.hpp>
#include <elpq/reductions.hpp>
#include <elpq/treewidth.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace elpq;

namespace {

constexpr int kExitOk         = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSemantic   = 2;
constexpr int kExitBudget     = 3;

struct Settings {
    std::string input;
    std::string output;
    bool        json      = false;
    bool        timing    = false;
    unsigned    jobs      = 1;
    bool        fastpath  = false;
    bool        witnesses = false;
    std::string query;
    std::string heuristic = "min-fill";
    std::string mode      = "auto";
    bool        bagGround = false;
    bool        nice      = false;
    std::string pace;
    std::string kind;

    std::optional<std::size_t> atomBudget, guessBudget, groundBudget;
};

struct Budgets {
    std::size_t atom   = AspOptions{}.atomBudget;
    std::size_t guess  = ElpOptions{}.guessBudget;
    std::size_t ground = GroundOptions{}.ruleBudget;
};

class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(ErrorKind::Validation, what) {}
};

std::size_t envBudget(const char* name, std::size_t fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    std::size_t pos = 0;
    unsigned long long n = 0;
    try {
        n = std::stoull(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || v[pos] != '\0') throw InputError(std::string("environment variable ") + name + " is not a number");
    return static_cast<std::size_t>(n);
}

Budgets resolveBudgets(const Settings& s) {
    Budgets b;
    b.atom   = s.atomBudget.value_or(envBudget("ELPQ_ATOM_BUDGET", b.atom));
    b.guess  = s.guessBudget.value_or(envBudget("ELPQ_GUESS_BUDGET", b.guess));
    b.ground = s.groundBudget.value_or(envBudget("ELPQ_GROUND_BUDGET", b.ground));
    return b;
}

std::string readInput(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), {}};
}

void writeOutput(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw InputError("cannot write " + path);
}

class Report {
public:
    Report(const std::string& command, const Settings& s) : settings_(s), start_(std::chrono::steady_clock::now()) {
        data_["command"] = command;
    }

    json& operator[](const char* key) { return data_[key]; }

    void line(const std::string& text) { text_ << text << '\n'; }

    void warn(const std::string& msg) {
        warnings_.push_back(msg);
        std::cerr << "warning: " << msg << '\n';
    }

    void input(const std::string& path, const std::string& bytes) {
        data_["input"] = {{"file", path}, {"sha256", sha256_hex(bytes)}};
    }

    void budgets(const Budgets& b) { data_["budgets"] = {{"atom", b.atom}, {"guess", b.guess}, {"ground", b.ground}}; }

    void emit() {
        data_["warnings"] = warnings_;
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
        if (settings_.timing) data_["timing_ms"] = ms;
        if (settings_.json) {
            std::cout << data_.dump(2) << '\n';
        } else {
            std::cout << text_.str();
            if (settings_.timing) std::cout << "time: " << ms << " ms\n";
        }
    }

private:
    const Settings&                       settings_;
    std::chrono::steady_clock::time_point start_;
    json                                  data_;
    std::vector<std::string>              warnings_;
    std::ostringstream                    text_;
};

// ---- shared pipeline ---------------------------------------------------------

struct Prepared {
    Program program;  // as parsed
    Program prepared; // after the automatic domain rewrite
    bool    rewritten = false;
};

Prepared prepare(const std::string& text, Report& report) {
    Prepared p;
    p.program = parse_program(text);
    reject_reserved_names(p.program);
    auto strict   = check_safety(p.program, SafetyMode::Strict);
    auto standard = check_safety(p.program, SafetyMode::Standard);
    if (!strict.empty()) {
        if (standard.empty()) {
            std::string rules;
            for (auto i : strict) rules += (rules.empty() ? "" : ", ") + std::to_string(i + 1);
            report.warn("rule(s) " + rules + " are safe except for variables under epistemic operators; applying the domain rewrite");
        }
        p.prepared  = domain_rewrite(p.program);
        p.rewritten = true;
    } else {
        p.prepared = p.program;
    }
    return p;
}

bool hidden(const Atom& a, bool rewritten) { return rewritten && a.predicate == kDomainPredicate; }

std::vector<std::string> visibleLiterals(const WVI& wvi, const AtomTable& table, bool rewritten) {
    std::vector<std::string> out;
    for (const auto& l : wvi.literals)
        if (!hidden(table.atom(l.atom), rewritten)) out.push_back((l.positive ? "" : "-") + table.atom(l.atom).str());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> visibleAtoms(const Interpretation& m, const AtomTable& table, bool rewritten) {
    std::vector<std::string> out;
    for (auto i = m.find_first(); i != Interpretation::npos; i = m.find_next(i))
        if (!hidden(table.atom(static_cast<AtomId>(i)), rewritten)) out.push_back(table.atom(static_cast<AtomId>(i)).str());
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t visibleAtomCount(const AtomTable& table, bool rewritten) {
    std::size_t n = 0;
    for (const auto& a : table.atoms()) n += !hidden(a, rewritten);
    return n;
}

std::string braces(const std::vector<std::string>& items) {
    std::string s = "{";
    for (std::size_t i = 0; i != items.size(); ++i) s += (i ? ", " : "") + items[i];
    return s + "}";
}

ElpOptions elpOptions(const Settings& s, const Budgets& b) {
    ElpOptions o;
    o.asp.atomBudget  = b.atom;
    o.guessBudget     = b.guess;
    o.jobs            = std::max(1U, s.jobs);
    o.keepWitnesses   = s.witnesses;
    return o;
}

// ---- commands ----------------------------------------------------------------

void cmdSolve(const Settings& s, Report& report, bool countOnly) {
    const auto text = readInput(s.input);
    report.input(s.input, text);
    const auto budgets = resolveBudgets(s);
    report.budgets(budgets);

    auto prep = prepare(text, report);
    auto cls  = classify(prep.program);
    report["class"] = to_string(cls);
    report.line(std::string("class: ") + to_string(cls));

    auto gp = ground(prep.prepared, GroundOptions{budgets.ground});
    report["ground"] = {{"rules", gp.rules().size()}, {"atoms", visibleAtomCount(gp.table(), prep.rewritten)}};
    report["domain_rewrite"] = prep.rewritten;
    report.line("ground: " + std::to_string(gp.rules().size()) + " rules, " +
                std::to_string(visibleAtomCount(gp.table(), prep.rewritten)) + " atoms");

    std::vector<WorldView> views;
    std::string            method = "guess";
    if (s.fastpath && classify(gp.toProgram()) == ProgramClass::NonNeg) {
        method = "nonneg";
        if (auto wv = solve_nonneg(gp)) {
            if (s.witnesses) {
                LeastModelResult lm;
                solve_nonneg(gp, &lm);
                wv->witnesses = std::vector<Interpretation>{lm.model};
            }
            views.push_back(std::move(*wv));
        }
    } else {
        views = enumerate_world_views(gp, elpOptions(s, budgets));
    }
    report["method"] = method;
    report["count"]  = std::to_string(views.size());
    report.line("world views: " + std::to_string(views.size()));
    if (countOnly) return;

    json list = json::array();
    for (std::size_t i = 0; i != views.size(); ++i) {
        const auto& wv   = views[i];
        auto        lits = visibleLiterals(wv.wvi, gp.table(), prep.rewritten);
        json        item = {{"literals", lits}, {"witness_count", wv.witnessCount}};
        report.line("wv " + std::to_string(i + 1) + ": " + braces(lits) + "  (" + std::to_string(wv.witnessCount) +
                    " answer sets)");
        if (wv.witnesses) {
            json w = json::array();
            for (const auto& m : *wv.witnesses) {
                auto atoms = visibleAtoms(m, gp.table(), prep.rewritten);
                report.line("  as: " + braces(atoms));
                w.push_back(atoms);
            }
            item["witnesses"] = w;
        }
        list.push_back(item);
    }
    report["world_views"] = list;
}

void cmdProb(const Settings& s, Report& report) {
    const auto text = readInput(s.input);
    report.input(s.input, text);
    const auto budgets = resolveBudgets(s);
    report.budgets(budgets);

    auto prep  = prepare(text, report);
    auto query = parse_query(s.query);
    QuantOptions opts;
    opts.ground.ruleBudget = budgets.ground;
    opts.elp               = elpOptions(s, budgets);
    opts.elp.keepWitnesses = false;
    auto res = probability_details(prep.prepared, query, opts);
    if (res.value > 1) report.warn("probability exceeds 1: plausibility level above that of the empty query");

    report["query"]      = query.str();
    report["level"]      = res.level.str();
    report["base_level"] = res.baseLevel.str();
    report["probability"] = {{"exact", to_fraction(res.value)}, {"decimal", to_decimal(res.value, 6)}};
    report.line("query: " + query.str());
    report.line("plausibility level: " + res.level.str());
    report.line("world views without query: " + res.baseLevel.str());
    report.line("probability: " + to_fraction(res.value) + " (" + to_decimal(res.value, 6) + ")");
}

void cmdGround(const Settings& s, Report& report) {
    const auto text = readInput(s.input);
    report.input(s.input, text);
    const auto budgets = resolveBudgets(s);
    report.budgets(budgets);
    auto program = parse_program(text);
    reject_reserved_names(program);
    auto grounded = ground_rules(program, GroundOptions{budgets.ground});
    auto out      = serialize_program(grounded);
    report["rules"]         = grounded.rules.size();
    report["output_sha256"] = sha256_hex(out);
    if (s.output.empty() && !s.json) {
        std::cout << out;
        return;
    }
    if (!s.output.empty()) writeOutput(s.output, out);
    report.line("ground rules: " + std::to_string(grounded.rules.size()));
}

void cmdClassify(const Settings& s, Report& report) {
    const auto text = readInput(s.input);
    report.input(s.input, text);
    auto program = parse_program(text);
    auto cls     = classify(program);
    auto graph   = dependency_graph(program, program.isGround());
    auto cycle   = graph.findCycle();
    report["class"]            = to_string(cls);
    report["ground"]           = program.isGround();
    report["dependency_edges"] = graph.edges().size();
    json cyc                   = json::array();
    if (cycle)
        for (auto v : *cycle) cyc.push_back(graph.vertices()[v]);
    report["cycle"] = cyc;
    report.line(to_string(cls));
}

void cmdReduce(const Settings& s, Report& report) {
    const auto text = readInput(s.input);
    report.input(s.input, text);
    Program     program;
    std::string hash;
    if (s.kind == "tight") {
        auto inst = parse_diff_qbf1(text);
        program   = encode_tight(inst);
        hash      = instance_hash(inst);
    } else {
        auto inst = parse_diff_qbf3(text);
        program   = encode_disj_nonground(inst);
        hash      = instance_hash(inst);
    }
    auto out = serialize_program(program);
    report["kind"]          = s.kind;
    report["instance_hash"] = hash;
    report["rules"]         = program.rules.size();
    report["class"]         = to_string(classify(program));
    report["output_sha256"] = sha256_hex(out);
    if (s.output.empty() && !s.json) {
        std::cout << out;
        return;
    }
    if (!s.output.empty()) writeOutput(s.output, out);
    report.line("rules: " + std::to_string(program.rules.size()));
    report.line(std::string("class: ") + to_string(classify(program)));
}

void cmdTd(const Settings& s, Report& report) {
    const auto text = readInput(s.input);
    report.input(s.input, text);
    const auto budgets = resolveBudgets(s);
    report.budgets(budgets);
    auto program = parse_program(text);
    reject_reserved_names(program);

    GraphMode mode = s.mode == "ground"      ? GraphMode::Ground
                     : s.mode == "predicate" ? GraphMode::Predicate
                     : program.isGround()    ? GraphMode::Ground
                                             : GraphMode::Predicate;
    if (s.bagGround && mode != GraphMode::Predicate) throw InputError("--bag-ground needs a predicate-mode decomposition");
    auto heuristic = s.heuristic == "min-degree" ? Heuristic::MinDegree : Heuristic::MinFill;

    auto g  = primal_graph(program, mode);
    auto td = decompose(g, heuristic);
    if (s.nice) td = make_nice(td);
    auto problem = check_tree_decomposition(g, td);
    if (!problem.empty()) throw std::logic_error("invalid decomposition: " + problem);

    report["mode"]      = mode == GraphMode::Ground ? "ground" : "predicate";
    report["heuristic"] = s.heuristic;
    report["graph"]     = {{"vertices", g.vertices.size()}, {"edges", g.edges.size()}};
    report["td"]        = {{"nodes", td.size()}, {"width", td.width()}, {"nice", is_nice(td)}, {"valid", true}};
    report.line("graph: " + std::to_string(g.vertices.size()) + " vertices, " + std::to_string(g.edges.size()) + " edges");
    report.line("width: " + std::to_string(td.width()) + " (" + std::to_string(td.size()) + " nodes)");
    if (!s.pace.empty()) writeOutput(s.pace, to_pace(td));

    if (s.bagGround) {
        auto res      = bag_ground(program, td, GroundOptions{budgets.ground}, std::max(1U, s.jobs));
        auto groundG  = primal_graph(res.program.toProgram(), GraphMode::Ground);
        auto verdict  = check_tree_decomposition(groundG, res.decomposition);
        auto out      = serialize_program(res.program.toProgram());
        report["bag_ground"] = {{"rules", res.program.rules().size()},
                                {"width", res.decomposition.width()},
                                {"valid", verdict.empty()},
                                {"output_sha256", sha256_hex(out)}};
        report.line("bag grounding: " + std::to_string(res.program.rules().size()) + " rules, ground width " +
                    std::to_string(res.decomposition.width()) + (verdict.empty() ? "" : " (invalid: " + verdict + ")"));
        if (!verdict.empty()) throw std::logic_error("ground decomposition invalid: " + verdict);
        if (!s.output.empty()) writeOutput(s.output, out);
    }
}

int exitCodeFor(ErrorKind k) {
    switch (k) {
    case ErrorKind::Validation: return kExitValidation;
    case ErrorKind::Semantic: return kExitSemantic;
    case ErrorKind::Budget: return kExitBudget;
    }
    return kExitValidation;
}

const char* kindName(ErrorKind k) {
    switch (k) {
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Semantic: return "semantic";
    case ErrorKind::Budget: return "budget";
    }
    return "validation";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantitative reasoning for epistemic logic programs"};
    app.require_subcommand(1);
    Settings s;

    auto budgetFlags = [&](CLI::App* c) {
        c->add_option("--atom-budget", s.atomBudget, "Maximum ground atoms for answer-set search");
        c->add_option("--guess-budget", s.guessBudget, "Maximum distinct epistemic inner literals");
        c->add_option("--ground-budget", s.groundBudget, "Maximum rule instances produced by grounding");
    };
    auto common = [&](CLI::App* c) {
        c->add_flag("--json", s.json, "Machine-readable report");
        c->add_flag("--timing", s.timing, "Include wall-clock time");
    };

    auto* solve = app.add_subcommand("solve", "Enumerate world views");
    solve->add_option("file", s.input, "Program file ('-' for stdin)")->required();
    solve->add_option("--jobs", s.jobs, "Worker threads")->check(CLI::PositiveNumber);
    solve->add_flag("--fragment-fastpath", s.fastpath, "Use the least-model procedure for NonNeg programs");
    solve->add_flag("--witnesses", s.witnesses, "List the answer sets of each world view");
    budgetFlags(solve);
    common(solve);

    auto* count = app.add_subcommand("count", "Count world views");
    count->add_option("file", s.input, "Program file")->required();
    count->add_option("--jobs", s.jobs, "Worker threads")->check(CLI::PositiveNumber);
    count->add_flag("--fragment-fastpath", s.fastpath, "Use the least-model procedure for NonNeg programs");
    budgetFlags(count);
    common(count);

    auto* prob = app.add_subcommand("prob", "Plausibility level and probability of a query");
    prob->add_option("file", s.input, "Program file")->required();
    prob->add_option("--query", s.query, "Query, e.g. \"K a, M -b\"");
    prob->add_option("--jobs", s.jobs, "Worker threads")->check(CLI::PositiveNumber);
    budgetFlags(prob);
    common(prob);

    auto* groundCmd = app.add_subcommand("ground", "Print the grounding");
    groundCmd->add_option("file", s.input, "Program file")->required();
    groundCmd->add_option("-o,--output", s.output, "Output file");
    budgetFlags(groundCmd);
    common(groundCmd);

    auto* classifyCmd = app.add_subcommand("classify", "Program class");
    classifyCmd->add_option("file", s.input, "Program file")->required();
    common(classifyCmd);

    auto* reduce = app.add_subcommand("reduce", "Encode a QBF difference instance as an ELP");
    reduce->add_option("kind", s.kind, "tight | disj3")->required()->check(CLI::IsMember({"tight", "disj3"}));
    reduce->add_option("instance", s.input, "Instance file")->required();
    reduce->add_option("-o,--output", s.output, "Output file");
    common(reduce);

    auto* td = app.add_subcommand("td", "Tree decomposition of the primal graph");
    td->add_option("file", s.input, "Program file")->required();
    td->add_option("--heuristic", s.heuristic, "min-fill | min-degree")->check(CLI::IsMember({"min-fill", "min-degree"}));
    td->add_option("--jobs", s.jobs, "Worker threads")->check(CLI::PositiveNumber);
    td->add_option("--mode", s.mode, "auto | ground | predicate")->check(CLI::IsMember({"auto", "ground", "predicate"}));
    td->add_flag("--nice", s.nice, "Convert to a nice decomposition");
    td->add_option("--pace", s.pace, "Write the decomposition in PACE format");
    td->add_flag("--bag-ground", s.bagGround, "Ground bag by bag");
    td->add_option("-o,--output", s.output, "Output file for the bag grounding");
    budgetFlags(td);
    common(td);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    auto* cmd = app.get_subcommands().front();
    Report report(cmd->get_name(), s);
    try {
        if (cmd == solve) cmdSolve(s, report, false);
        else if (cmd == count) cmdSolve(s, report, true);
        else if (cmd == prob) cmdProb(s, report);
        else if (cmd == groundCmd) cmdGround(s, report);
        else if (cmd == classifyCmd) cmdClassify(s, report);
        else if (cmd == reduce) cmdReduce(s, report);
        else cmdTd(s, report);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (s.json) {
            json err = {{"command", cmd->get_name()}, {"error", {{"kind", kindName(e.kind())}, {"message", e.what()}}}};
            std::cout << err.dump(2) << '\n';
        }
        return exitCodeFor(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (s.json) {
            json err = {{"command", cmd->get_name()}, {"error", {{"kind", "internal"}, {"message", e.what()}}}};
            std::cout << err.dump(2) << '\n';
        }
        return kExitSemantic;
    }
    if ((cmd == groundCmd || cmd == reduce) && s.output.empty() && !s.json) return kExitOk;
    report.emit();
    return kExitOk;
}
