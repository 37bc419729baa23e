#include <elpq/reductions.hpp>

#include <elpq/digest.hpp>
#include <elpq/error.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace elpq {

namespace {

constexpr const char* kHat    = "hat_";
constexpr const char* kSatPhi = "satphi";
constexpr const char* kSatPsi = "satpsi";
constexpr const char* kGate   = "q__";
constexpr const char* kBin    = "bin";

struct Block {
    char                            name;
    const std::vector<std::string>* vars;
};

bool validName(const std::string& v) {
    if (v.empty() || !std::islower(static_cast<unsigned char>(v[0]))) return false;
    if (!std::all_of(v.begin(), v.end(), [](char c) { return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_'; }))
        return false;
    static const std::set<std::string> reserved{kSatPhi, kSatPsi, kGate, kBin, "dom", "not", "knot", "v"};
    return !reserved.count(v) && v.rfind(kHat, 0) != 0 && v.rfind("s_", 0) != 0;
}

void validateBlocks(const std::vector<Block>& blocks) {
    std::map<std::string, char> owner;
    for (const auto& b : blocks)
        for (const auto& v : *b.vars) {
            if (!validName(v)) throw InvalidInstance("invalid or reserved variable name '" + v + "'");
            auto [it, fresh] = owner.emplace(v, b.name);
            if (!fresh)
                throw VariableOverlap("variable '" + v + "' declared in blocks " + std::string(1, it->second) + " and " +
                                      std::string(1, b.name));
        }
}

void validateCnf(const Cnf& cnf, const std::vector<Block>& scope, const char* label, std::size_t maxWidth) {
    std::set<std::string> allowed;
    for (const auto& b : scope) allowed.insert(b.vars->begin(), b.vars->end());
    for (const auto& c : cnf) {
        if (c.empty()) throw InvalidInstance(std::string("empty clause in ") + label);
        if (c.size() > maxWidth)
            throw ClauseWidthExceeded(std::string("clause of width ") + std::to_string(c.size()) + " in " + label);
        for (const auto& l : c)
            if (!allowed.count(l.var)) throw InvalidInstance("variable '" + l.var + "' not in scope of " + label);
    }
}

std::vector<Block> blocksOf(const DiffQbf1& i) { return {{'X', &i.X}, {'Y', &i.Y}, {'Z', &i.Z}}; }
std::vector<Block> blocksOf(const DiffQbf3& i) {
    return {{'X', &i.X}, {'Y', &i.Y}, {'Z', &i.Z}, {'Q', &i.Q}, {'U', &i.U}, {'V', &i.V}, {'W', &i.W}};
}

// ---- text format ---------------------------------------------------------

struct RawInstance {
    std::map<char, std::vector<std::string>> blocks;
    Cnf                                      phi, psi;
};

SourceSpan lineSpan(std::size_t line) { return {0, 0, line, 1}; }

RawInstance parseRaw(std::string_view text, const std::string& letters) {
    RawInstance        raw;
    std::istringstream in{std::string(text)};
    std::string        line;
    std::size_t        lineNo  = 0;
    Cnf*               section = nullptr;
    bool               sawBlocks = false;
    while (std::getline(in, line)) {
        ++lineNo;
        if (auto pct = line.find('%'); pct != std::string::npos) line.erase(pct);
        std::istringstream words(line);
        std::vector<std::string> toks;
        for (std::string w; words >> w;) toks.push_back(w);
        if (toks.empty()) continue;

        if (toks[0] == "blocks") {
            if (sawBlocks || section) throw SyntaxError("unexpected blocks line", lineSpan(lineNo));
            sawBlocks = true;
            std::string rest = line.substr(line.find("blocks") + 6);
            std::istringstream parts(rest);
            for (std::string part; std::getline(parts, part, ';');) {
                std::istringstream pw(part);
                std::string        head;
                if (!(pw >> head)) continue;
                if (head.size() != 2 || head[1] != ':' || letters.find(head[0]) == std::string::npos)
                    throw SyntaxError("bad block label '" + head + "'", lineSpan(lineNo));
                if (raw.blocks.count(head[0])) throw SyntaxError("block " + head.substr(0, 1) + " given twice", lineSpan(lineNo));
                auto& vars = raw.blocks[head[0]];
                for (std::string v; pw >> v;) vars.push_back(v);
            }
            continue;
        }
        if (toks.size() == 1 && (toks[0] == "phi:" || toks[0] == "psi:")) {
            section = toks[0] == "phi:" ? &raw.phi : &raw.psi;
            continue;
        }
        if (!section) throw SyntaxError("clause outside of a phi:/psi: section", lineSpan(lineNo));
        Clause c;
        for (const auto& t : toks) {
            bool neg = t[0] == '-';
            std::string var = neg ? t.substr(1) : t;
            if (var.empty()) throw SyntaxError("empty literal", lineSpan(lineNo));
            c.push_back({var, !neg});
        }
        section->push_back(std::move(c));
    }
    return raw;
}

void writeBlocks(std::ostream& os, const std::vector<Block>& blocks) {
    os << "blocks";
    for (const auto& b : blocks) {
        os << ' ' << b.name << ':';
        for (const auto& v : *b.vars) os << ' ' << v;
        os << " ;";
    }
    os << '\n';
}

void writeCnf(std::ostream& os, const char* label, const Cnf& cnf) {
    os << label << '\n';
    for (const auto& c : cnf) {
        const char* sep = "";
        for (const auto& l : c) {
            os << sep << (l.positive ? "" : "-") << l.var;
            sep = " ";
        }
        os << '\n';
    }
}

// ---- encoders --------------------------------------------------------------

Atom prop(const std::string& name) { return Atom{name}; }
Atom hatOf(const std::string& v) { return Atom{kHat + v}; }

Rule makeRule(std::vector<Atom> head, std::vector<Atom> pos = {}, std::vector<Atom> neg = {},
              std::vector<EpiElement> epi = {}) {
    Rule r{std::move(head), std::move(pos), std::move(neg), std::move(epi)};
    r.normalize();
    return r;
}

// x :- knot hat_x.   hat_x :- knot x.
void epistemicGuess(Program& p, const std::vector<std::string>& vars) {
    for (const auto& x : vars) {
        p.add(makeRule({prop(x)}, {}, {}, {EpiElement::knot({hatOf(x), true})}));
        p.add(makeRule({hatOf(x)}, {}, {}, {EpiElement::knot({prop(x), true})}));
    }
}

// q__ :- knot q__, knot -satpsi.   :- not satphi.
void gate(Program& p) {
    p.add(makeRule({prop(kGate)}, {}, {}, {EpiElement::knot({prop(kGate), true}), EpiElement::knot({prop(kSatPsi), false})}));
    p.add(makeRule({}, {}, {prop(kSatPhi)}));
}

Atom litAtom(const QbfLiteral& l) { return l.positive ? prop(l.var) : hatOf(l.var); }

void tightCnf(Program& p, const Cnf& cnf, const std::string& sat, const std::string& prefix) {
    std::vector<Atom> conj;
    for (std::size_t i = 0; i != cnf.size(); ++i) {
        Atom s{prefix + std::to_string(i + 1)};
        for (const auto& l : cnf[i]) p.add(makeRule({s}, {litAtom(l)}));
        conj.push_back(s);
    }
    p.add(makeRule({prop(sat)}, conj));
}

Term logicalVar(const std::string& v) { return Term::variable("V_" + v); }
Atom binOf(const Term& t) { return Atom{kBin, {t}}; }

// Clause predicates are parameterised by the innermost-block variables of the
// clause (sorted); the grounding over {0,1} realises the innermost existential.
void saturatedCnf(Program& p, const Cnf& cnf, const std::vector<std::string>& inner, const std::string& sat,
                  const std::string& prefix) {
    const std::set<std::string> innerSet(inner.begin(), inner.end());
    std::vector<Atom>           conj;
    for (std::size_t i = 0; i != cnf.size(); ++i) {
        std::vector<std::string> vec;
        for (const auto& l : cnf[i])
            if (innerSet.count(l.var)) vec.push_back(l.var);
        std::sort(vec.begin(), vec.end());
        vec.erase(std::unique(vec.begin(), vec.end()), vec.end());

        const std::string pred = prefix + std::to_string(i + 1);
        std::vector<Term> args;
        for (const auto& v : vec) args.push_back(logicalVar(v));
        for (const auto& l : cnf[i]) {
            if (!innerSet.count(l.var)) {
                std::vector<Atom> body{litAtom(l)};
                for (const auto& t : args) body.push_back(binOf(t));
                p.add(makeRule({Atom{pred, args}}, std::move(body)));
                continue;
            }
            std::vector<Term> headArgs;
            std::vector<Atom> body;
            for (const auto& v : vec) {
                if (v == l.var) {
                    headArgs.push_back(Term::constant(l.positive ? "1" : "0"));
                } else {
                    headArgs.push_back(logicalVar(v));
                    body.push_back(binOf(logicalVar(v)));
                }
            }
            p.add(makeRule({Atom{pred, std::move(headArgs)}}, std::move(body)));
        }
        conj.push_back(Atom{pred, args});
    }
    p.add(makeRule({prop(sat)}, conj));
}

// ---- brute force -----------------------------------------------------------

class Evaluator {
public:
    explicit Evaluator(const std::vector<Block>& blocks) {
        for (const auto& b : blocks)
            for (const auto& v : *b.vars) index_.emplace(v, index_.size());
        value_.assign(index_.size(), false);
    }

    std::vector<std::size_t> ids(const std::vector<std::string>& vars) const {
        std::vector<std::size_t> out;
        for (const auto& v : vars) out.push_back(index_.at(v));
        return out;
    }

    bool holds(const Cnf& cnf) const {
        return std::all_of(cnf.begin(), cnf.end(), [&](const Clause& c) {
            return std::any_of(c.begin(), c.end(), [&](const QbfLiteral& l) { return value_[index_.at(l.var)] == l.positive; });
        });
    }

    // Quantifier prefix given as (exists?, variables) pairs, innermost last.
    bool eval(const std::vector<std::pair<bool, std::vector<std::size_t>>>& prefix, std::size_t k, const Cnf& cnf) {
        if (k == prefix.size()) return holds(cnf);
        const auto& [exists, vars] = prefix[k];
        for (std::uint64_t mask = 0; mask != (std::uint64_t{1} << vars.size()); ++mask) {
            for (std::size_t i = 0; i != vars.size(); ++i) value_[vars[i]] = (mask >> i) & 1U;
            bool r = eval(prefix, k + 1, cnf);
            if (r == exists) return r;
        }
        return !exists;
    }

    template <class F>
    Count countOver(const std::vector<std::size_t>& xs, F&& accept) {
        Count n = 0;
        for (std::uint64_t mask = 0; mask != (std::uint64_t{1} << xs.size()); ++mask) {
            for (std::size_t i = 0; i != xs.size(); ++i) value_[xs[i]] = (mask >> i) & 1U;
            if (accept()) ++n;
        }
        return n;
    }

private:
    std::map<std::string, std::size_t> index_;
    std::vector<bool>                  value_;
};

void checkBudget(std::size_t outer, std::initializer_list<std::size_t> innerExps, std::uint64_t budget) {
    auto pow2 = [](std::size_t e) { return std::ldexp(1.0L, static_cast<int>(e)); };
    long double inner = 0;
    for (auto e : innerExps) inner += pow2(e);
    long double total = pow2(outer) * inner;
    if (outer >= 63 || total > static_cast<long double>(budget))
        throw BudgetExceeded("brute-force evaluation exceeds " + std::to_string(budget) + " assignments");
}

// ---- random generation -----------------------------------------------------

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    std::uint64_t below(std::uint64_t n) { return gen_() % n; }
    bool          coin() { return gen_() & 1U; }

private:
    std::mt19937_64 gen_;
};

std::vector<std::string> names(const std::string& prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

Cnf randomCnf(Rng& rng, const std::vector<std::string>& vars, std::size_t clauses, std::size_t maxWidth) {
    Cnf cnf;
    if (vars.empty() || maxWidth == 0) return cnf;
    for (std::size_t i = 0; i != clauses; ++i) {
        Clause c;
        std::size_t width = 1 + rng.below(maxWidth);
        for (std::size_t j = 0; j != width; ++j) c.push_back({vars[rng.below(vars.size())], rng.coin()});
        cnf.push_back(std::move(c));
    }
    return cnf;
}

std::vector<std::string> concat(std::initializer_list<const std::vector<std::string>*> parts) {
    std::vector<std::string> out;
    for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
    return out;
}

} // namespace

void validate(const DiffQbf1& inst) {
    auto b = blocksOf(inst);
    validateBlocks(b);
    validateCnf(inst.phi, {b[0], b[1]}, "phi", SIZE_MAX);
    validateCnf(inst.psi, {b[0], b[2]}, "psi", SIZE_MAX);
}

void validate(const DiffQbf3& inst) {
    auto b = blocksOf(inst);
    validateBlocks(b);
    validateCnf(inst.phi, {b[0], b[1], b[2], b[3]}, "phi", 3);
    validateCnf(inst.psi, {b[0], b[4], b[5], b[6]}, "psi", 3);
}

DiffQbf1 parse_diff_qbf1(std::string_view text) {
    auto     raw = parseRaw(text, "XYZ");
    DiffQbf1 inst{raw.blocks['X'], raw.blocks['Y'], raw.blocks['Z'], raw.phi, raw.psi};
    validate(inst);
    return inst;
}

DiffQbf3 parse_diff_qbf3(std::string_view text) {
    auto     raw = parseRaw(text, "XYZQUVW");
    DiffQbf3 inst{raw.blocks['X'], raw.blocks['Y'], raw.blocks['Z'], raw.blocks['Q'], raw.blocks['U'],
                  raw.blocks['V'], raw.blocks['W'], raw.phi,         raw.psi};
    validate(inst);
    return inst;
}

std::string serialize_instance(const DiffQbf1& inst) {
    std::ostringstream os;
    writeBlocks(os, blocksOf(inst));
    writeCnf(os, "phi:", inst.phi);
    writeCnf(os, "psi:", inst.psi);
    return os.str();
}

std::string serialize_instance(const DiffQbf3& inst) {
    std::ostringstream os;
    writeBlocks(os, blocksOf(inst));
    writeCnf(os, "phi:", inst.phi);
    writeCnf(os, "psi:", inst.psi);
    return os.str();
}

std::string instance_hash(const DiffQbf1& inst) { return sha256_hex(serialize_instance(inst)); }
std::string instance_hash(const DiffQbf3& inst) { return sha256_hex(serialize_instance(inst)); }

Program encode_tight(const DiffQbf1& inst) {
    validate(inst);
    Program p;
    epistemicGuess(p, inst.X);
    for (const auto& a : concat({&inst.Y, &inst.Z})) {
        p.add(makeRule({prop(a)}, {}, {hatOf(a)}));
        p.add(makeRule({hatOf(a)}, {}, {prop(a)}));
    }
    gate(p);
    tightCnf(p, inst.phi, kSatPhi, "s_phi");
    tightCnf(p, inst.psi, kSatPsi, "s_psi");
    return p;
}

Program encode_disj_nonground(const DiffQbf3& inst) {
    validate(inst);
    Program p;
    epistemicGuess(p, inst.X);
    for (const auto& a : concat({&inst.Y, &inst.Z, &inst.Q, &inst.U, &inst.V, &inst.W}))
        p.add(makeRule({prop(a), hatOf(a)}));
    for (const auto& a : inst.Z) {
        p.add(makeRule({prop(a)}, {prop(kSatPhi)}));
        p.add(makeRule({hatOf(a)}, {prop(kSatPhi)}));
    }
    for (const auto& a : inst.V) {
        p.add(makeRule({prop(a)}, {prop(kSatPsi)}));
        p.add(makeRule({hatOf(a)}, {prop(kSatPsi)}));
    }
    p.add(makeRule({Atom{kBin, {Term::constant("0")}}}));
    p.add(makeRule({Atom{kBin, {Term::constant("1")}}}));
    gate(p);
    saturatedCnf(p, inst.phi, inst.Q, kSatPhi, "s_phi");
    saturatedCnf(p, inst.psi, inst.W, kSatPsi, "s_psi");
    return p;
}

Count eval_diff_count(const DiffQbf1& inst, std::uint64_t budget) {
    validate(inst);
    checkBudget(inst.X.size(), {inst.Y.size(), inst.Z.size()}, budget);
    Evaluator ev(blocksOf(inst));
    const std::vector<std::pair<bool, std::vector<std::size_t>>> left{{true, ev.ids(inst.Y)}};
    const std::vector<std::pair<bool, std::vector<std::size_t>>> right{{true, ev.ids(inst.Z)}};
    return ev.countOver(ev.ids(inst.X), [&] { return ev.eval(left, 0, inst.phi) && !ev.eval(right, 0, inst.psi); });
}

Count eval_diff_count(const DiffQbf3& inst, std::uint64_t budget) {
    validate(inst);
    checkBudget(inst.X.size(), {inst.Y.size() + inst.Z.size() + inst.Q.size(), inst.U.size() + inst.V.size() + inst.W.size()},
                budget);
    Evaluator ev(blocksOf(inst));
    const std::vector<std::pair<bool, std::vector<std::size_t>>> left{
        {true, ev.ids(inst.Y)}, {false, ev.ids(inst.Z)}, {true, ev.ids(inst.Q)}};
    const std::vector<std::pair<bool, std::vector<std::size_t>>> right{
        {true, ev.ids(inst.U)}, {false, ev.ids(inst.V)}, {true, ev.ids(inst.W)}};
    return ev.countOver(ev.ids(inst.X), [&] { return ev.eval(left, 0, inst.phi) && !ev.eval(right, 0, inst.psi); });
}

DiffQbf1 random_diff_qbf1(std::uint64_t seed, const Qbf1Shape& shape) {
    Rng      rng(seed);
    DiffQbf1 inst{names("x", shape.x), names("y", shape.y), names("z", shape.z), {}, {}};
    inst.phi = randomCnf(rng, concat({&inst.X, &inst.Y}), shape.phiClauses, shape.maxWidth);
    inst.psi = randomCnf(rng, concat({&inst.X, &inst.Z}), shape.psiClauses, shape.maxWidth);
    return inst;
}

DiffQbf3 random_diff_qbf3(std::uint64_t seed, const Qbf3Shape& shape) {
    Rng      rng(seed);
    DiffQbf3 inst{names("x", shape.x), names("y", shape.y), names("z", shape.z), names("q", shape.q),
                  names("u", shape.u), names("v", shape.v), names("w", shape.w), {},  {}};
    inst.phi = randomCnf(rng, concat({&inst.X, &inst.Y, &inst.Z, &inst.Q}), shape.phiClauses, 3);
    inst.psi = randomCnf(rng, concat({&inst.X, &inst.U, &inst.V, &inst.W}), shape.psiClauses, 3);
    return inst;
}

} // namespace elpq
