#include <doctest.h>

#include <mutex>
#include <set>

#include "selpref/error.hpp"
#include "selpref/wsd.hpp"
#include "support/fixtures.hpp"
#include "support/planted.hpp"

using namespace selpref;
using selpref::testing::parse_triples;
using selpref::testing::toy_records;
using selpref::testing::toy_taxonomy;

namespace {

WsdInstance instance(const Taxonomy& t, std::string verb, std::optional<std::string> verb_concept,
                     std::string noun, const char* gold) {
  WsdInstance w;
  w.verb_lemma = std::move(verb);
  if (verb_concept) w.verb_concept = t.index(*verb_concept);
  w.rel = Relation::obj;
  w.noun_lemma = std::move(noun);
  w.noun_concept = t.index(gold);
  return w;
}

}  // namespace

TEST_CASE("toy decisions") {
  const Taxonomy t = toy_taxonomy();
  const Estimator est(t, tally(toy_records(t)));

  SUBCASE("chicken after eat") {
    // n_food leads the eat table and subsumes only the food sense.
    const Decision d = disambiguate(est, instance(t, "eat", "v_eat", "chicken", "n_chicken_food"),
                                    ModelKind::word_to_class);
    CHECK(d.selected == std::vector<ConceptIndex>{t.index("n_chicken_food")});
    CHECK(d.deciding_class == t.index("n_food"));
    CHECK(d.weight() == 1.0);
    CHECK(d.credit(t.index("n_chicken_food")) == 1.0);
    CHECK(d.credit(t.index("n_wimp")) == 0.0);
  }
  SUBCASE("monosemous noun") {
    for (ModelKind kind : kModelKinds) {
      const Decision d = disambiguate(est, instance(t, "eat", "v_eat", "apple", "n_apple"), kind);
      CHECK(d.selected == std::vector<ConceptIndex>{t.index("n_apple")});
    }
  }
  SUBCASE("untrained verb abstains") {
    const Decision d = disambiguate(est, instance(t, "sing", std::nullopt, "chicken", "n_wimp"),
                                    ModelKind::word_to_class);
    CHECK(d.abstained());
    CHECK(d.weight() == 0.0);
    CHECK_FALSE(d.deciding_class.has_value());
  }
  SUBCASE("sense model needs a verb tag") {
    CHECK(disambiguate(est, instance(t, "eat", std::nullopt, "apple", "n_apple"), ModelKind::sense_to_class)
              .abstained());
  }
  SUBCASE("noun without senses") {
    WsdInstance w = instance(t, "eat", "v_eat", "apple", "n_apple");
    w.noun_lemma = "zebra";
    CHECK(disambiguate(est, w, ModelKind::word_to_class).abstained());
  }
  SUBCASE("class model scans the union of the verb's senses") {
    Disambiguator d(est, ModelKind::class_to_class);
    const auto& scan = d.scan_list(instance(t, "eat", "v_eat", "chicken", "n_chicken_food"));
    REQUIRE_FALSE(scan.empty());
    for (std::size_t i = 1; i < scan.size(); ++i) CHECK(scan[i - 1].score >= scan[i].score);
    CHECK(d.decide(instance(t, "eat", std::nullopt, "chicken", "n_chicken_food")).selected ==
          std::vector<ConceptIndex>{t.index("n_chicken_food")});
  }
}

TEST_CASE("a class over several senses selects them with equal weight") {
  const Taxonomy t = selpref::testing::parse_taxonomy(
      "n_top\tnoun\t\t\n"
      "n_animal\tnoun\tn_top\t\n"
      "n_dog\tnoun\tn_animal\tdog#1\n"
      "n_bat1\tnoun\tn_animal\tbat#1\n"
      "n_bat2\tnoun\tn_animal\tbat#2\n"
      "v_see\tverb\t\tsee#1\n");
  const Estimator est(t, tally(parse_triples("see\tv_see\tobj\tdog\tn_dog\nsee\tv_see\tobj\tdog\tn_dog\n", t)));
  WsdInstance w;
  w.verb_lemma = "see";
  w.verb_concept = t.index("v_see");
  w.noun_lemma = "bat";
  w.noun_concept = t.index("n_bat2");
  const Decision d = disambiguate(est, w, ModelKind::word_to_class);
  CHECK(d.deciding_class == t.index("n_animal"));
  CHECK(d.selected == std::vector<ConceptIndex>{t.index("n_bat1"), t.index("n_bat2")});
  CHECK(d.weight() == 0.5);
  CHECK(d.credit(t.index("n_bat2")) == 0.5);
}

TEST_CASE("baselines") {
  const Taxonomy t = toy_taxonomy();
  const std::vector<WsdInstance> toy = {instance(t, "eat", "v_eat", "apple", "n_apple"),
                                        instance(t, "eat", "v_eat", "chicken", "n_chicken_food")};
  const WsdReport random = baseline_random(t, toy);
  CHECK(random.precision == doctest::Approx(0.75));
  CHECK(random.coverage == 1.0);
  CHECK(random.recall == random.precision);

  const std::vector<WsdInstance> chickens = {instance(t, "eat", "v_eat", "chicken", "n_chicken_food"),
                                             instance(t, "eat", "v_eat", "chicken", "n_wimp")};
  CHECK(baseline_random(t, chickens).precision == doctest::Approx(0.5));
  const WsdReport mfs = baseline_mfs(t, chickens);
  CHECK(mfs.precision == doctest::Approx(0.5));
  CHECK(mfs.coverage == 1.0);
  CHECK(baseline_mfs(t, std::vector<WsdInstance>{chickens[0]}).precision == 1.0);

  // Gold follows the sense-1 convention: random <= mfs <= 1.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto fx = selpref::testing::random_fixture(seed);
    for (auto& r : fx.records) r.noun_concept = fx.taxonomy.senses_of(r.noun_lemma, PartOfSpeech::noun)[0].index;
    const double rp = baseline_random(fx.taxonomy, fx.records).precision;
    const double mp = baseline_mfs(fx.taxonomy, fx.records).precision;
    CHECK(0.0 <= rp);
    CHECK(rp <= mp);
    CHECK(mp == 1.0);
  }
}

TEST_CASE("fold splits") {
  const auto singletons = kfold_split(10, 10, 0);
  REQUIRE(singletons.size() == 10);
  for (const auto& f : singletons) CHECK(f.size() == 1);

  const auto three = kfold_split(10, 3, 0);
  CHECK(three[0].size() == 4);
  CHECK(three[1].size() == 3);
  CHECK(three[2].size() == 3);

  CHECK(kfold_split(57, 10, 42) == kfold_split(57, 10, 42));
  CHECK(kfold_split(57, 10, 42) != kfold_split(57, 10, 43));

  for (std::size_t n : {2u, 7u, 31u, 100u}) {
    for (std::size_t k = 2; k <= std::min<std::size_t>(n, 12); ++k) {
      const auto folds = kfold_split(n, k, n * 31 + k);
      std::set<std::size_t> seen;
      std::size_t lo = n, hi = 0;
      for (const auto& f : folds) {
        lo = std::min(lo, f.size());
        hi = std::max(hi, f.size());
        for (std::size_t i : f) CHECK(seen.insert(i).second);
      }
      CHECK(seen.size() == n);
      CHECK(hi - lo <= 1);
    }
  }
  CHECK_THROWS_AS(kfold_split(5, 1, 0), Error);
  CHECK_THROWS_AS(kfold_split(5, 6, 0), Error);
}

TEST_CASE("degenerate evaluations") {
  const Taxonomy t = toy_taxonomy();
  SUBCASE("everything abstains") {
    const auto untagged = parse_triples(std::string(4, ' ').replace(0, 4, "") +
                                            "eat\t-\tobj\tapple\tn_apple\n"
                                            "eat\t-\tobj\tapple\tn_apple\n"
                                            "eat\t-\tobj\tchicken\tn_chicken_food\n"
                                            "eat\t-\tobj\tchicken\tn_chicken_food\n",
                                        t);
    const WsdReport r = evaluate(t, untagged, ModelKind::sense_to_class, {.folds = 2});
    CHECK(r.n_decided == 0);
    CHECK(r.zero_decided);
    CHECK(r.precision == 0.0);
    CHECK(r.coverage == 0.0);
    CHECK(r.recall == 0.0);
  }
  SUBCASE("every decision is exactly right") {
    const auto apples = parse_triples(
        "eat\tv_eat\tobj\tapple\tn_apple\n"
        "eat\tv_eat\tobj\tapple\tn_apple\n"
        "eat\tv_eat\tobj\tapple\tn_apple\n"
        "eat\tv_eat\tobj\tapple\tn_apple\n",
        t);
    for (ModelKind kind : kModelKinds) {
      const WsdReport r = evaluate(t, apples, kind, {.folds = 2});
      CHECK(r.precision == 1.0);
      CHECK(r.coverage == 1.0);
      CHECK(r.recall == 1.0);
      CHECK_FALSE(r.zero_decided);
    }
  }
  SUBCASE("too many folds") {
    CHECK_THROWS_AS(evaluate(t, toy_records(t), ModelKind::word_to_class, {.folds = 6}), Error);
    CHECK_THROWS_AS(evaluate(t, toy_records(t), ModelKind::word_to_class, {.folds = 1}), Error);
  }
}

TEST_CASE("test folds never reach the training counts") {
  for (bool grouped : {false, true}) {
    const auto fx = selpref::testing::random_fixture(5, {.max_triples = 150, .untagged_rate = 0.1});
    const CountTable all = tally(fx.records);
    std::mutex mu;
    std::vector<std::size_t> covered;
    EvalOptions opt;
    opt.folds = 5;
    opt.seed = 9;
    opt.group_by_noun = grouped;
    bool clean = true;
    opt.observer = [&](std::size_t, const CountTable& training, std::span<const std::size_t> test) {
      std::vector<TripleRecord> held;
      for (std::size_t i : test) held.push_back(fx.records[i]);
      CountTable sum = training;
      sum += tally(held);
      std::lock_guard lock(mu);
      clean = clean && sum == all;
      covered.insert(covered.end(), test.begin(), test.end());
    };
    evaluate(fx.taxonomy, fx.records, ModelKind::class_to_class, opt);
    CHECK(clean);
    std::sort(covered.begin(), covered.end());
    std::vector<std::size_t> expected(fx.records.size());
    std::iota(expected.begin(), expected.end(), std::size_t{0});
    CHECK(covered == expected);
  }
}

TEST_CASE("report identities and determinism") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto fx = selpref::testing::random_fixture(seed, {.max_triples = 120, .untagged_rate = 0.1});
    if (fx.records.size() < 10) continue;
    for (ModelKind kind : kModelKinds) {
      for (bool grouped : {false, true}) {
        EvalOptions opt{.folds = 10, .seed = seed, .prune = false, .group_by_noun = grouped, .observer = {}};
        const WsdReport r = evaluate(fx.taxonomy, fx.records, kind, opt);
        CHECK(std::abs(r.recall - r.precision * r.coverage) <= 1e-12);
        CHECK(r.n_total == fx.records.size());
        CHECK(r.folds.size() == 10);
        std::size_t total = 0, decided = 0;
        for (const FoldReport& f : r.folds) {
          total += f.n_total;
          decided += f.n_decided;
        }
        CHECK(total == r.n_total);
        CHECK(decided == r.n_decided);
        CHECK(evaluate(fx.taxonomy, fx.records, kind, opt) == r);
      }
    }
  }
}

TEST_CASE("planted class preferences reach unseen verbs") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto planted = selpref::testing::planted_corpus(seed);
    const WsdReport word = evaluate_split(planted.taxonomy, planted.training, planted.test, ModelKind::word_to_class);
    const WsdReport cls = evaluate_split(planted.taxonomy, planted.training, planted.test, ModelKind::class_to_class);
    CHECK(word.coverage == 0.0);
    CHECK(cls.coverage >= 0.95);
    CHECK(cls.recall > word.recall);
    CHECK(cls.recall > baseline_random(planted.taxonomy, planted.test).recall);
  }
}

TEST_CASE("pruning can remove the deciding class") {
  // apple outranks food and prunes it, but subsumes no sense of chicken.
  const Taxonomy t = toy_taxonomy();
  const Estimator est(t, tally(parse_triples(
                             "eat\tv_eat\tobj\tapple\tn_apple\n"
                             "eat\tv_eat\tobj\tapple\tn_apple\n"
                             "eat\tv_eat\tobj\tapple\tn_apple\n",
                             t)));
  const WsdInstance w = instance(t, "eat", "v_eat", "chicken", "n_chicken_food");
  const Decision full = disambiguate(est, w, ModelKind::word_to_class, false);
  CHECK(full.deciding_class == t.index("n_food"));
  CHECK(full.selected == std::vector<ConceptIndex>{t.index("n_chicken_food")});
  CHECK(disambiguate(est, w, ModelKind::word_to_class, true).abstained());
}

TEST_CASE("pruning keeps the decision whenever the deciding class survives") {
  std::size_t checked = 0, survived = 0;
  for (std::uint64_t seed = 0; checked < 1000; ++seed) {
    const auto fx = selpref::testing::random_fixture(seed, {.untagged_rate = 0.1});
    const Estimator est(fx.taxonomy, tally(fx.records));
    std::mt19937_64 rng(seed);
    for (ModelKind kind : kModelKinds) {
      Disambiguator full(est, kind, false);
      Disambiguator pruned(est, kind, true);
      for (int i = 0; i < 4 && checked < 1000; ++i, ++checked) {
        const auto& r = fx.records[selpref::testing::draw(rng, 0, static_cast<int>(fx.records.size()) - 1)];
        const Decision a = full.decide(r);
        const auto& kept = pruned.scan_list(r);
        const auto& scan = full.scan_list(r);
        const auto deciding = std::find_if(scan.begin(), scan.end(), [&](const ScoredConcept& e) {
          return a.deciding_class && e.node == *a.deciding_class;
        });
        const bool in_kept = deciding != scan.end() && std::find(kept.begin(), kept.end(), *deciding) != kept.end();
        if (!in_kept) continue;
        ++survived;
        CAPTURE(model_name(kind));
        CHECK(pruned.decide(r) == a);
      }
    }
  }
  CHECK(survived > 500);
}
