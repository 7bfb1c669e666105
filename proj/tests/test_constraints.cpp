#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "ctxspell/constraints.hpp"

using namespace ctxspell;

namespace {
const std::string fixtures = CTXSPELL_FIXTURE_DIR;
} // namespace

TEST_CASE("rule file parsing") {
    auto rules = load_rules(fixtures + "/toy.rules");
    REQUIRE(rules.size() == 3);
    CHECK(rules[0].id == "drop-verb-after-pronoun");
    CHECK(rules[0].target == pos::verb);
    REQUIRE(rules[0].left.has_value());
    CHECK(rules[0].left->contains(pos::pron));
    CHECK_FALSE(rules[0].right.has_value());
    CHECK(rules[2].right->contains(pos::punct));
}

TEST_CASE("rule parsing rejects malformed lines") {
    std::istringstream no_ctx("r1\tREMOVE V\tIF left=*\tright=*\n");
    CHECK_THROWS_AS(parse_rules(no_ctx), config_error);
    std::istringstream bad_tag("r1\tREMOVE XYZ\tIF left=DET\tright=*\n");
    CHECK_THROWS_AS(parse_rules(bad_tag), config_error);
    std::istringstream bad_ctx_tag("r1\tREMOVE V\tIF left=QQ\tright=*\n");
    CHECK_THROWS_AS(parse_rules(bad_ctx_tag), config_error);
    std::istringstream few("r1\tREMOVE V\tIF left=DET\n");
    CHECK_THROWS_AS(parse_rules(few), config_error);
}

TEST_CASE("fixture rules resolve 'left' to a verb in 'The boss left.'") {
    auto rules = load_rules(fixtures + "/toy.rules");
    // The/DET boss/N left/{V,ADJ} ./PUNCT — hand trace: the ADJ reading is
    // removed by drop-adj-before-period, nothing else fires.
    std::vector<pos_set> readings = {
        pos_set::of({pos::det}),
        pos_set::of({pos::noun}),
        pos_set::of({pos::verb, pos::adj}),
        pos_set::of({pos::punct}),
    };
    auto out = disambiguate(readings, rules);
    CHECK(out[0] == pos_set::of({pos::det}));
    CHECK(out[1] == pos_set::of({pos::noun}));
    CHECK(out[2] == pos_set::of({pos::verb}));
    CHECK(out[3] == pos_set::of({pos::punct}));
}

TEST_CASE("empty rule list leaves readings unchanged") {
    std::vector<pos_set> readings = {pos_set::of({pos::noun, pos::verb}),
                                     pos_set::of({pos::det})};
    auto out = disambiguate(readings, {});
    CHECK(out == readings);
}

TEST_CASE("a rule that would empty a token does not fire") {
    std::vector<constraint_rule> rules;
    rules.push_back({"kill-v", pos::verb, pos_set::of({pos::det}), std::nullopt});
    std::vector<pos_set> readings = {pos_set::of({pos::det}), pos_set::of({pos::verb})};
    auto out = disambiguate(readings, rules);
    CHECK(out[1] == pos_set::of({pos::verb})); // only reading survives untouched
}

TEST_CASE("context requires the neighbour to be narrowed to one tag") {
    std::vector<constraint_rule> rules;
    rules.push_back({"v-after-det", pos::verb, pos_set::of({pos::det}), std::nullopt});
    // ambiguous left neighbour: rule must not fire
    std::vector<pos_set> ambiguous = {pos_set::of({pos::det, pos::pron}),
                                      pos_set::of({pos::verb, pos::noun})};
    CHECK(disambiguate(ambiguous, rules)[1] == pos_set::of({pos::verb, pos::noun}));
    // unambiguous left neighbour: it fires
    std::vector<pos_set> clear = {pos_set::of({pos::det}),
                                  pos_set::of({pos::verb, pos::noun})};
    CHECK(disambiguate(clear, rules)[1] == pos_set::of({pos::noun}));
}

TEST_CASE("rules cascade to a fixpoint as context sharpens") {
    // tok0 narrows first, which unlocks the rule on tok1.
    std::vector<constraint_rule> rules;
    rules.push_back({"r-bound", pos::verb, pos_set::of({pos::bound}), std::nullopt});
    rules.push_back({"r-efter", pos::adj, pos_set::of({pos::noun}), std::nullopt});
    std::vector<pos_set> readings = {pos_set::of({pos::noun, pos::verb}),
                                     pos_set::of({pos::adj, pos::det})};
    auto out = disambiguate(readings, rules);
    CHECK(out[0] == pos_set::of({pos::noun}));
    CHECK(out[1] == pos_set::of({pos::det}));
}

TEST_CASE("disambiguation is a contraction and idempotent") {
    auto rules = load_rules(fixtures + "/toy.rules");
    std::mt19937 gen(3);
    std::uniform_int_distribution<int> len(1, 8);
    std::uniform_int_distribution<int> tag(0, static_cast<int>(lexical_pos_count) - 1);
    std::uniform_int_distribution<int> extra(0, 2);
    for (int iter = 0; iter < 500; ++iter) {
        std::vector<pos_set> readings;
        int n = len(gen);
        for (int i = 0; i < n; ++i) {
            pos_set s;
            s.insert(static_cast<pos>(tag(gen)));
            for (int k = extra(gen); k > 0; --k) s.insert(static_cast<pos>(tag(gen)));
            readings.push_back(s);
        }
        auto once = disambiguate(readings, rules);
        REQUIRE(once.size() == readings.size());
        for (std::size_t i = 0; i < once.size(); ++i) {
            CHECK_FALSE(once[i].empty());                 // never emptied
            CHECK(once[i].is_subset_of(readings[i]));     // only shrinks
        }
        CHECK(disambiguate(once, rules) == once);         // fixpoint
    }
}
