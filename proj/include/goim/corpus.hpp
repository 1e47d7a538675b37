#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "term.hpp"

namespace goim {

// Deterministic seeded generator (splitmix64); reports must be reproducible
// byte-for-byte, so no std:: distributions.
struct SplitMix {
    uint64_t state;
    explicit SplitMix(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }
    bool chance(uint32_t percent) { return below(100) < percent; }
};

namespace corpus {

inline VarName numbered(const std::string& base, uint64_t i) {
    return intern(base + std::to_string(i));
}

// \s. \z. s (s ... (s z))
inline Term church(uint64_t n, uint64_t tag = 0) {
    VarName s = numbered("s", tag), z = numbered("z", tag);
    Term body = mk_var(z);
    for (uint64_t i = 0; i < n; i++) body = mk_app(mk_var(s), body);
    return mk_abs(s, mk_abs(z, body));
}

inline Term identity(uint64_t tag) {
    VarName x = numbered("i", tag);
    return mk_abs(x, mk_var(x));
}

// (church n) I I — iterates the identity n times; the standard work-scaling
// family used by the bench subcommand.
inline Term church_app(uint64_t n) {
    return mk_app(mk_app(church(n, 900), identity(901)), identity(902));
}

// church n `compose` church m applied to I and I: \x. n (m x) I I
inline Term church_compose(uint64_t n, uint64_t m) {
    VarName f = numbered("f", 910);
    Term comp = mk_abs(f, mk_app(church(n, 911), mk_app(church(m, 912), mk_var(f))));
    return mk_app(mk_app(comp, identity(913)), identity(914));
}

inline Term comb_i(uint64_t& tag) {
    VarName x = numbered("ci", tag++);
    return mk_abs(x, mk_var(x));
}
inline Term comb_k(uint64_t& tag) {
    VarName x = numbered("ck", tag++), y = numbered("ck", tag++);
    return mk_abs(x, mk_abs(y, mk_var(x)));
}
inline Term comb_s(uint64_t& tag) {
    VarName x = numbered("cs", tag++), y = numbered("cs", tag++), z = numbered("cs", tag++);
    return mk_abs(x, mk_abs(y, mk_abs(z, mk_app(mk_app(mk_var(x), mk_var(z)),
                                                mk_app(mk_var(y), mk_var(z))))));
}

// Random applicative composition of S/K/I instances.
inline Term combinator_tree(SplitMix& rng, uint64_t atoms, uint64_t& tag) {
    if (atoms <= 1) {
        switch (rng.below(3)) {
            case 0: return comb_i(tag);
            case 1: return comb_k(tag);
            default: return comb_s(tag);
        }
    }
    uint64_t left = 1 + rng.below(atoms - 1);
    Term f = combinator_tree(rng, left, tag);
    Term u = combinator_tree(rng, atoms - left, tag);
    return mk_app(f, u);
}

// Size-bounded random closed well-named pure term. Closed and well-named by
// construction: binders are drawn from a per-term counter, variables only
// from the enclosing scope.
inline Term random_closed(SplitMix& rng, uint64_t budget, std::vector<VarName>& scope,
                          uint64_t& fresh) {
    if (scope.empty() && budget < 2) budget = 2;
    if (budget <= 1) return mk_var(scope[rng.below(scope.size())]);

    uint64_t min_side = scope.empty() ? 2 : 1;
    bool can_app = budget >= 1 + 2 * min_side;
    bool make_abs = !can_app || rng.chance(45);
    if (make_abs) {
        VarName x = numbered("r", fresh++);
        scope.push_back(x);
        Term body = random_closed(rng, budget - 1, scope, fresh);
        scope.pop_back();
        return mk_abs(x, body);
    }
    uint64_t room = budget - 1 - 2 * min_side;
    uint64_t b1 = min_side + rng.below(room + 1);
    uint64_t b2 = budget - 1 - b1;
    Term f = random_closed(rng, b1, scope, fresh);
    Term u = random_closed(rng, b2, scope, fresh);
    return mk_app(f, u);
}

inline Term random_closed(SplitMix& rng, uint64_t max_size) {
    std::vector<VarName> scope;
    uint64_t fresh = 0; // binders must be distinct within a term only
    uint64_t budget = 2 + rng.below(max_size > 2 ? max_size - 1 : 1);
    return random_closed(rng, budget, scope, fresh);
}

} // namespace corpus

struct CorpusRequest {
    enum Family { ChurchApp, ChurchCompose, Combinators, RandomClosed };
    Family family = RandomClosed;
    uint64_t count = 100;     // Combinators / RandomClosed
    uint64_t n_from = 2, n_to = 8; // Church families
    uint64_t max_size = 40;
    uint64_t seed = 1;
};

inline std::vector<Term> gen_corpus(const CorpusRequest& req) {
    std::vector<Term> out;
    SplitMix rng(req.seed);
    switch (req.family) {
        case CorpusRequest::ChurchApp:
            for (uint64_t n = req.n_from; n <= req.n_to; n++) out.push_back(corpus::church_app(n));
            break;
        case CorpusRequest::ChurchCompose:
            for (uint64_t n = req.n_from; n <= req.n_to; n++)
                out.push_back(corpus::church_compose(n, 2 + (n % 3)));
            break;
        case CorpusRequest::Combinators: {
            uint64_t tag = 0;
            for (uint64_t i = 0; i < req.count; i++)
                out.push_back(corpus::combinator_tree(rng, 2 + rng.below(5), tag));
            break;
        }
        case CorpusRequest::RandomClosed:
            for (uint64_t i = 0; i < req.count; i++)
                out.push_back(corpus::random_closed(rng, req.max_size));
            break;
    }
    for (auto& t : out)
        if (!is_closed_well_named(t))
            throw std::logic_error("gen_corpus produced an invalid term");
    return out;
}

inline Term omega_term() {
    VarName x = intern("om1"), y = intern("om2");
    Term d1 = mk_abs(x, mk_app(mk_var(x), mk_var(x)));
    Term d2 = mk_abs(y, mk_app(mk_var(y), mk_var(y)));
    return mk_app(d1, d2);
}

} // namespace goim
