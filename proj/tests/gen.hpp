#pragma once

// Seeded generators shared by the property tests. Deterministic across
// platforms (splitmix64, no std distributions).

#include <cstdint>
#include <string>
#include <vector>

#include "goim/context.hpp"
#include "goim/term.hpp"

namespace goim::testgen {

struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }
    bool chance(uint32_t percent) { return below(100) < percent; }
};

inline VarName test_var(uint64_t i) { return intern("g" + std::to_string(i)); }

// Arbitrary term over a small ambient scope; may be open, may contain
// explicit substitutions when allow_es is set.
inline Term gen_term(Rng& rng, int depth, uint64_t scope_vars, bool allow_es) {
    if (depth <= 0 || rng.chance(35)) return mk_var(test_var(rng.below(scope_vars)));
    switch (rng.below(allow_es ? 3 : 2)) {
        case 0: return mk_abs(test_var(rng.below(scope_vars)), gen_term(rng, depth - 1, scope_vars, allow_es));
        case 1:
            return mk_app(gen_term(rng, depth - 1, scope_vars, allow_es),
                          gen_term(rng, depth - 1, scope_vars, allow_es));
        default:
            return mk_sub(gen_term(rng, depth - 1, scope_vars, allow_es), test_var(rng.below(scope_vars)),
                          gen_term(rng, depth - 1, scope_vars, allow_es));
    }
}

// Arbitrary evaluation context exercising all four frame kinds.
inline EvalCtx gen_ctx(Rng& rng, int depth, uint64_t scope_vars, bool allow_es) {
    if (depth <= 0 || rng.chance(25)) return ctx_hole();
    switch (rng.below(3)) {
        case 0:
            return ctx_app_left(gen_ctx(rng, depth - 1, scope_vars, allow_es),
                                gen_term(rng, depth - 1, scope_vars, allow_es));
        case 1:
            return ctx_sub_outer(gen_ctx(rng, depth - 1, scope_vars, allow_es),
                                 test_var(rng.below(scope_vars)),
                                 gen_term(rng, depth - 1, scope_vars, allow_es));
        default:
            return ctx_hered(gen_ctx(rng, depth - 1, scope_vars, allow_es),
                             test_var(rng.below(scope_vars)),
                             gen_ctx(rng, depth - 1, scope_vars, allow_es));
    }
}

inline VarMultiset gen_multiset(Rng& rng, uint64_t scope_vars, uint64_t max_each = 3) {
    VarMultiset m;
    for (uint64_t i = 0; i < scope_vars; i++)
        m.add(test_var(i), static_cast<uint32_t>(rng.below(max_each + 1)));
    return m;
}

} // namespace goim::testgen
