#include <catch2/catch_amalgamated.hpp>

#include "gen.hpp"
#include "goim/corpus.hpp"
#include "goim/sam.hpp"

using namespace goim;

TEST_CASE("single steps") {
    NameSupply supply(1000);
    Term t = parse("(\\x. x) (\\z. z)");
    Configuration c0 = initial_configuration(t);

    auto s1 = sam_step(c0, supply);
    REQUIRE(s1.has_value());
    CHECK(s1->rule == SamRule::O1);
    CHECK(s1->label == Label::O);
    CHECK(term_equal(s1->next.focus, t->a));
    REQUIRE(s1->next.ctx->kind == CtxNode::AppLeft);
    CHECK(term_equal(s1->next.ctx->t, t->b));

    // value in term phase flips to context phase
    Configuration cv{parse("\\z. z"), ctx_hole(), Phase::TermPhase};
    auto s2 = sam_step(cv, supply);
    REQUIRE(s2.has_value());
    CHECK(s2->rule == SamRule::O3);
    CHECK(s2->next.phase == Phase::CtxtPhase);

    // (v, <>)_ctxt is final
    Configuration cf{parse("\\z. z"), ctx_hole(), Phase::CtxtPhase};
    CHECK_FALSE(sam_step(cf, supply).has_value());

    // final also under a substitution context
    Configuration cf2{parse("\\y. y"),
                      ctx_sub_outer(ctx_hole(), intern("q"), parse("\\z. z")),
                      Phase::CtxtPhase};
    CHECK_FALSE(sam_step(cf2, supply).has_value());
}

TEST_CASE("identity application: full trace") {
    NameSupply supply(1000);
    Term t = parse("(\\x. x) (\\z. z)");
    SamResult r = sam_run(t, 100, supply, true);

    REQUIRE(r.halted);
    REQUIRE(r.trace.size() == 6);
    SamRule expected[6] = {SamRule::O1, SamRule::O3, SamRule::B,
                           SamRule::O2, SamRule::O3, SamRule::SOne};
    for (int i = 0; i < 6; i++) CHECK(r.trace[i].rule == expected[i]);

    CHECK(r.stats.b == 1);
    CHECK(r.stats.s == 1);
    CHECK(r.stats.o == 4);

    // ends exactly at (\z. z, <>)_ctxt
    CHECK(r.final_config.phase == Phase::CtxtPhase);
    CHECK(r.final_config.ctx->kind == CtxNode::Hole);
    CHECK(term_equal(r.final_config.focus, parse("\\z. z")));
}

TEST_CASE("partial garbage collection example") {
    NameSupply supply(1000);
    Term t = parse("(\\x. \\y. y) (\\z. z)");
    SamResult r = sam_run(t, 100, supply, true);

    REQUIRE(r.halted);
    // ends at (\y. y, <>[x <- \z. z])_ctxt: the unused binding survives
    CHECK(r.final_config.phase == Phase::CtxtPhase);
    CHECK(term_equal(r.final_config.focus, parse("\\y. y")));
    REQUIRE(r.final_config.ctx->kind == CtxNode::SubOuter);
    CHECK(r.final_config.ctx->var == intern("x"));
    CHECK(term_equal(r.final_config.ctx->t, parse("\\z. z")));
    CHECK(r.final_config.ctx->inner->kind == CtxNode::Hole);

    CHECK(r.stats.b == 1);
    CHECK(r.stats.s == 0);
    CHECK(r.stats.o == 3);
}

TEST_CASE("self application of a shared binding") {
    // (\x. x x) (\z. z): the binding for x is looked up twice; the first
    // lookup copies, the second consumes.
    NameSupply supply(1000);
    Term t = parse("(\\x. x x) (\\z. z)");
    SamResult r = sam_run(t, 100, supply, true);

    REQUIRE(r.halted);
    CHECK(term_equal(r.final_config.focus, parse("\\z. z")));
    CHECK(r.final_config.ctx->kind == CtxNode::Hole);

    SamRule expected[] = {SamRule::O1, SamRule::O3, SamRule::B,    SamRule::O1, SamRule::O2,
                          SamRule::O3, SamRule::SPos, SamRule::B,  SamRule::O2, SamRule::O2,
                          SamRule::O3, SamRule::SOne, SamRule::SOne};
    REQUIRE(r.trace.size() == sizeof(expected) / sizeof(expected[0]));
    for (size_t i = 0; i < r.trace.size(); i++) CHECK(r.trace[i].rule == expected[i]);

    CHECK(r.stats.b == 2);
    CHECK(r.stats.s == 3);
    CHECK(r.stats.o == 8);
}

TEST_CASE("divergence exhausts fuel") {
    NameSupply supply(1000);
    SamResult r = sam_run(omega_term(), 500, supply);
    CHECK_FALSE(r.halted);
    CHECK(r.steps == 500);
}

TEST_CASE("input validation") {
    NameSupply supply(1000);
    CHECK_THROWS_AS(sam_run(mk_var(intern("x")), 10, supply), SamError);
    CHECK_THROWS_AS(sam_run(parse_term("(\\x. x)[y <- \\z. z]"), 10, supply), SamError);
    Term shadowed = parse_term("\\x. \\x. x");
    CHECK_THROWS_AS(sam_run(shadowed, 10, supply), SamError);
}

TEST_CASE("bounds check operation") {
    RunStats st;
    st.b = 1, st.s = 1, st.o = 4;
    CHECK(sam_check_bounds(st, 5)); // 4 <= 5*7 + 4

    RunStats bad;
    bad.b = 0, bad.s = 1, bad.o = 0;
    CHECK_FALSE(sam_check_bounds(bad, 100));

    RunStats zero;
    CHECK(sam_check_bounds(zero, 2));
}

TEST_CASE("redecomposition identity and reachability (property)") {
    CorpusRequest req;
    req.family = CorpusRequest::RandomClosed;
    req.count = 150;
    req.max_size = 25;
    req.seed = 99;
    auto terms = gen_corpus(req);

    for (auto& t0 : terms) {
        NameSupply supply(5000);
        Configuration c = initial_configuration(t0);
        std::vector<Term> subs;
        for_each_subterm(t0, [&](const Term& s) { subs.push_back(s); });

        for (int i = 0; i < 400; i++) {
            auto st = sam_step(c, supply);
            if (!st) break;
            if (st->label == Label::O) {
                // o-steps rearrange but never change the plugging
                CHECK(term_equal(c.plugging(), st->next.plugging()));
            }
            c = st->next;
            Term plug = c.plugging();
            CHECK(is_closed_well_named(plug));
            // focus is a sub-term of the initial term up to renaming
            bool found = false;
            for (auto& s : subs)
                if (equal_up_to_renaming(c.focus, s)) {
                    found = true;
                    break;
                }
            CHECK(found);
        }
    }
}

TEST_CASE("determinism up to fresh names (property)") {
    CorpusRequest req;
    req.family = CorpusRequest::RandomClosed;
    req.count = 60;
    req.max_size = 22;
    req.seed = 123;
    auto terms = gen_corpus(req);

    for (auto& t0 : terms) {
        NameSupply s1(10000), s2(777777);
        SamResult r1 = sam_run(t0, 2000, s1, true);
        SamResult r2 = sam_run(t0, 2000, s2, true);
        REQUIRE(r1.steps == r2.steps);
        for (size_t i = 0; i < r1.trace.size(); i++) {
            CHECK(r1.trace[i].rule == r2.trace[i].rule);
            CHECK(alpha_equal(r1.trace[i].after.plugging(), r2.trace[i].after.plugging()));
        }
    }
}

TEST_CASE("SPos copies a pure value") {
    // the copied value never contains an explicit substitution
    CorpusRequest req;
    req.family = CorpusRequest::Combinators;
    req.count = 40;
    req.seed = 5;
    auto terms = gen_corpus(req);
    for (auto& t0 : terms) {
        NameSupply supply(31337);
        Configuration c = initial_configuration(t0);
        for (int i = 0; i < 2000; i++) {
            auto st = sam_step(c, supply);
            if (!st) break;
            if (st->rule == SamRule::SPos) CHECK(is_pure(st->next.focus));
            c = st->next;
        }
    }
}
