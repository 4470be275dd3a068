#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nkc/corpus.hpp"
#include "nkc/walks.hpp"
#include "oracle.hpp"

using namespace nkc;

namespace {

std::set<std::string> finite_keys(const WalkSpace& ws, const WalkEnumeration& e) {
    std::set<std::string> out;
    for (const Walk& w : e.walks)
        if (!w.infinite()) out.insert(w.key);
    return out;
}

WalkErrorKind error_of(const WalkSpace& ws, const std::string& text) {
    try {
        parse_walk(ws, text);
    } catch (const WalkError& e) {
        return e.kind();
    }
    FAIL("expected a walk error for " << text);
    return WalkErrorKind::Parse;
}

const std::vector<std::string> kSmallComplete = {"cambrian:R", "cambrian:RR", "cambrian:RL", "cambrian:LR",
                                                 "reversed:2", "reversed:3", "cambrian:RRL", "cambrian:RLR"};

}  // namespace

TEST_CASE("A2 walks agree with the brute-force enumeration") {
    WalkSpace ws(cambrian_path("R"));
    auto e = enumerate_walks(ws, 10);
    CHECK(e.complete);
    CHECK(e.walks.size() == 8);
    CHECK(finite_keys(ws, e) == oracle::finite_walks(ws.full(), 12));
}

TEST_CASE("finite walk sets agree with the brute-force enumeration") {
    for (const auto& name : kSmallComplete) {
        CAPTURE(name);
        WalkSpace ws(corpus_quiver(name));
        auto e = enumerate_walks(ws, 40);
        CHECK(e.complete);
        CHECK(finite_keys(ws, e) == oracle::finite_walks(ws.full(), 44));
    }
}

TEST_CASE("canonical form is idempotent and direction free") {
    for (const auto& name : {"cambrian:RL", "reversed:3", "cycle:1", "cycle:2", "doublecycle:1", "doublepath:3"}) {
        CAPTURE(name);
        WalkSpace ws(corpus_quiver(name));
        auto e = enumerate_walks(ws, 6);
        CHECK_FALSE(e.walks.empty());
        for (const Walk& w : e.walks) {
            CAPTURE(w.key);
            CHECK(canonicalize(ws, w) == w);
            CHECK(canonicalize(ws, w).body == w.body);
            CHECK(canonicalize(ws, reversed(w)) == w);
            CHECK(parse_walk(ws, w.key) == w);
            CHECK(serialize(ws, w) == w.key);
        }
    }
}

TEST_CASE("walk errors") {
    WalkSpace ws(cambrian_path("RR"));
    CHECK(error_of(ws, "a1+ a2+") == WalkErrorKind::NotMaximal);
    CHECK(error_of(ws, "a1+ a1-") == WalkErrorKind::NotReduced);
    CHECK(error_of(ws, "a1+ a1+") == WalkErrorKind::NotComposable);
    CHECK(error_of(ws, "zz+") == WalkErrorKind::Parse);
    CHECK(error_of(ws, "") == WalkErrorKind::Parse);
    WalkSpace rp(reversed_path(2));
    // a1 b1 is in the ideal
    CHECK(error_of(rp, "1+in1+ a1+ b1+ 1+out1+") == WalkErrorKind::RelationHit);
}

TEST_CASE("loop walks") {
    WalkSpace ws(cycle_quiver(1));
    auto e = enumerate_walks(ws, 8);
    // the winding walks 1+in1 a1^-k 1+out1 exist for every k
    CHECK_FALSE(e.complete);
    std::set<std::string> keys;
    for (const Walk& w : e.walks) keys.insert(w.key);
    CHECK(keys.count("(a1+) | a1+ | (a1+)") == 1);
    CHECK(keys.count("1+in1+ 1+out1+") == 1);
    CHECK(keys.count("(a1+) | 1+in1-") == 1);
    CHECK(keys.count("(a1-) | 1+out1+") == 1);
    CHECK(keys.count("1+in1+ a1- 1+out1+") == 1);
    CHECK(keys.count("1+in1+ a1- a1- 1+out1+") == 1);
    // bare tail ids are accepted when only one orientation fits
    CHECK(parse_walk(ws, "1+in1+ a1- | (a1)").key == "(a1+) | 1+in1-");
    auto nsk = enumerate_nonkissing_walks(ws, 8);
    CHECK(nsk.complete);
    CHECK(nsk.walks.size() == 4);
    for (const Walk& w : nsk.walks) CHECK_FALSE(self_kissing(ws, w));
}

TEST_CASE("nonkissing enumeration is the self-kissing filter of the full one") {
    for (const auto& name : kSmallComplete) {
        CAPTURE(name);
        WalkSpace ws(corpus_quiver(name));
        auto all = enumerate_walks(ws, 40);
        auto nsk = enumerate_nonkissing_walks(ws, 40);
        REQUIRE(all.complete);
        CHECK(nsk.complete);
        std::set<std::string> expect, got;
        for (const Walk& w : all.walks)
            if (!self_kissing(ws, w)) expect.insert(w.key);
        for (const Walk& w : nsk.walks) got.insert(w.key);
        CHECK(expect == got);
    }
}

TEST_CASE("peak and deep walks") {
    for (const auto& entry : builtin_corpus()) {
        CAPTURE(entry.name);
        WalkSpace ws(entry.quiver);
        for (int a = 0; a < entry.quiver.num_vertices(); ++a) {
            Walk p = peak_walk(ws, a), d = deep_walk(ws, a);
            auto cp = corners(ws, p), cd = corners(ws, d);
            REQUIRE(cp.size() == 1);
            REQUIRE(cd.size() == 1);
            CHECK(cp[0].vertex == a);
            CHECK(cp[0].peak);
            CHECK(cd[0].vertex == a);
            CHECK_FALSE(cd[0].peak);
            KissCount k = kiss_count(ws, p, d);
            CHECK((k.infinite || k.value >= 1));
        }
    }
}

TEST_CASE("peak walks belong to the enumeration") {
    WalkSpace ws(cycle_quiver(1));
    auto e = enumerate_walks(ws, 4);
    std::set<std::string> keys;
    for (const Walk& w : e.walks) keys.insert(w.key);
    CHECK(keys.count(peak_walk(ws, 0).key) == 1);
    CHECK(keys.count(deep_walk(ws, 0).key) == 1);
}

TEST_CASE("kiss counts agree with the definition on finite instances") {
    for (const auto& name : kSmallComplete) {
        CAPTURE(name);
        WalkSpace ws(corpus_quiver(name));
        auto e = enumerate_walks(ws, 40);
        for (const Walk& a : e.walks)
            for (const Walk& b : e.walks) {
                CAPTURE(a.key);
                CAPTURE(b.key);
                KissCount k = kiss_count(ws, a, b);
                CHECK_FALSE(k.infinite);
                CHECK(k.value == oracle::kisses(ws.full(), oracle::unrolled(a, 0), oracle::unrolled(b, 0)));
            }
    }
}

TEST_CASE("kiss counts agree with the definition on unrolled windows") {
    for (const auto& name : {"cycle:1", "cycle:2", "doublecycle:1", "reversed:2"}) {
        CAPTURE(name);
        WalkSpace ws(corpus_quiver(name));
        auto e = enumerate_walks(ws, 5);
        for (const Walk& a : e.walks)
            for (const Walk& b : e.walks) {
                CAPTURE(a.key);
                CAPTURE(b.key);
                for (int u : {1, 2, 3})
                    CHECK(kiss_count_window(ws, a, b, u) ==
                          oracle::kisses(ws.full(), oracle::unrolled(a, u), oracle::unrolled(b, u)));
            }
    }
}

TEST_CASE("straight walks never kiss") {
    for (const auto& entry : builtin_corpus()) {
        CAPTURE(entry.name);
        WalkSpace ws(entry.quiver);
        auto straight = straight_walks(ws);
        auto e = enumerate_walks(ws, 4);
        for (const Walk& s : straight) {
            CHECK(is_straight(ws, s));
            for (const Walk& w : e.walks) {
                CHECK(kiss_count(ws, s, w) == KissCount{});
                CHECK(kiss_count(ws, w, s) == KissCount{});
            }
        }
    }
}

TEST_CASE("non-self-kissing walks carry cycles only in their tails") {
    for (const auto& name : {"cycle:1", "cycle:2", "cycle:3", "doublecycle:1", "doublecycle:2"}) {
        CAPTURE(name);
        WalkSpace ws(corpus_quiver(name));
        auto e = enumerate_walks(ws, 7);
        for (const Walk& w : e.walks) {
            if (is_infinite_straight(ws, w) || self_kissing(ws, w)) continue;
            CAPTURE(w.key);
            const auto& b = w.body;
            for (size_t i = 0; i < b.size(); ++i) {
                size_t k = static_cast<size_t>(ws.cycle_length(b[i]));
                if (k == 0 || i + k > b.size()) continue;
                bool full = true;
                for (size_t j = i; j + 1 < i + k; ++j) full = full && ws.straight(b[j]) == b[j + 1];
                // a full period inside the body is only allowed when it is part of a tail
                bool tail_side = (i == 0 && w.left_infinite()) || (i + k == b.size() && w.right_infinite());
                CHECK((!full || tail_side));
            }
        }
    }
}

TEST_CASE("total kissing number") {
    WalkSpace ws(cambrian_path("R"));
    auto e = enumerate_walks(ws, 10);
    for (const Walk& w : e.walks) {
        KissCount k = total_kissing_number(ws, w, e);
        CHECK_FALSE(k.infinite);
        if (is_straight(ws, w)) CHECK(k.value == 0);
        else CHECK(k.value > 0);
    }
    WalkSpace loop(cycle_quiver(1));
    auto le = enumerate_walks(loop, 4);
    CHECK_THROWS_AS(total_kissing_number(loop, le.walks[0], le), IncompleteUniverse);
}
