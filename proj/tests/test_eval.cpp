#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "treeavg/discbracket.hpp"
#include "treeavg/errors.hpp"
#include "treeavg/eval.hpp"
#include "treeavg/generate.hpp"

using namespace treeavg;
using treeavg::testing::c;

namespace {

std::vector<SentenceRecord> corpus(std::initializer_list<const char*> lines) {
  std::vector<SentenceRecord> out;
  for (const char* line : lines) out.push_back(parse_discbracket(line));
  return out;
}

const std::set<std::string> kNoPunct;
const std::set<std::string> kGermanPunct{"$,", "$.", "$("};

}  // namespace

TEST_CASE("perfect predictions score 100 everywhere") {
  auto gold = corpus({"(ROOT (o 0=Wake 3=up) (o 1=your 2=friend))",
                      "(ROOT (o 0=a 1=b) (o 2=c 3=d))"});
  CorpusReport report = corpus_scores(gold, gold, kNoPunct, false);
  CHECK(report.overall.f1() == 100.0);
  CHECK(report.continuous.f1() == 100.0);
  CHECK(report.discontinuous.f1() == 100.0);
  CHECK(report.sentences == 2);
}

TEST_CASE("disagreeing brackets after trivial exclusion") {
  auto pred = corpus({"(ROOT (o 0=a 1=b) 2=c)"});
  auto gold = corpus({"(ROOT 0=a (o 1=b 2=c))"});
  CorpusReport report = corpus_scores(pred, gold, kNoPunct, false);
  CHECK(report.overall.tp == 0);
  CHECK(report.overall.fp == 1);
  CHECK(report.overall.fn == 1);
  CHECK(report.overall.f1() == 0.0);
}

TEST_CASE("hand-counted micro corpus") {
  // Sentence 1: pred has the correct disco bracket {0,2} plus a spurious
  //             continuous {0,1}; gold has {0,2} and {1,3}.
  // Sentence 2: pred and gold agree on {1,2} and disagree on one more.
  // Sentence 3: pred flat (nothing non-trivial), gold one bracket.
  auto pred = corpus({
      "(ROOT (o (o 0=A 2=C) 1=B) 3=D)",
      "(ROOT (o 0=a (o 1=b 2=c)) 3=d)",
      "(ROOT 0=x 1=y 2=z)",
  });
  auto gold = corpus({
      "(ROOT (o 0=A 2=C) (o 1=B 3=D))",
      "(ROOT (o 1=b 2=c) 0=a 3=d)",
      "(ROOT (o 0=x 1=y) 2=z)",
  });
  // Hand count:
  //   s1 pred non-trivial: {0,2} disco, {0,1,2} cont; gold: {0,2}, {1,3}.
  //       TP {0,2} (disco). FP {0,1,2} (cont). FN {1,3} (disco).
  //   s2 pred: {1,2} cont, {0,1,2} cont; gold: {1,2} cont.
  //       TP {1,2}. FP {0,1,2}.
  //   s3 pred: none; gold: {0,1} cont -> FN.
  CorpusReport report = corpus_scores(pred, gold, kNoPunct, false);
  CHECK(report.overall.tp == 2);
  CHECK(report.overall.fp == 2);
  CHECK(report.overall.fn == 2);
  CHECK(report.discontinuous.tp == 1);
  CHECK(report.discontinuous.fp == 0);
  CHECK(report.discontinuous.fn == 1);
  CHECK(report.continuous.tp == 1);
  CHECK(report.continuous.fp == 2);
  CHECK(report.continuous.fn == 1);
  CHECK(report.overall.precision() == 50.0);
  CHECK(report.overall.recall() == 50.0);
  CHECK(report.overall.f1() == 50.0);
}

TEST_CASE("punctuation masking reindexes and drops collapsed constituents") {
  // Leaf 1 is punctuation; the gold bracket {0,2} becomes continuous {0,1}
  // after masking and must match a pred bracket that also collapses to it.
  auto pred = corpus({"(ROOT (o 0=a 2=b) ($, 1=,) 3=c)"});
  auto gold = corpus({"(ROOT (o 0=a 2=b) ($, 1=,) 3=c)"});
  CorpusReport masked = corpus_scores(pred, gold, kGermanPunct, false);
  CHECK(masked.overall.tp == 1);
  CHECK(masked.continuous.tp == 1);  // fan-out measured after masking
  CHECK(masked.discontinuous.tp == 0);

  CorpusReport unmasked = corpus_scores(pred, gold, kNoPunct, false);
  CHECK(unmasked.discontinuous.tp == 1);

  // A two-word constituent that loses a leaf to masking becomes trivial and
  // vanishes from both sides.
  auto pred2 = corpus({"(ROOT (o 0=a ($. 1=.)) 2=b 3=c)"});
  auto gold2 = corpus({"(ROOT 0=a ($. 1=.) (o 2=b 3=c))"});
  CorpusReport r2 = corpus_scores(pred2, gold2, kGermanPunct, false);
  CHECK(r2.overall.tp == 0);
  CHECK(r2.overall.fp == 0);
  CHECK(r2.overall.fn == 1);

  // A predicted constituent made entirely of punctuation vanishes rather
  // than counting as a false positive.
  auto pred3 = corpus({"(ROOT (o 1=, 2=!) 0=a 3=b 4=c)"});
  auto gold3 = corpus({"(ROOT 0=a ($, 1=,) ($. 2=!) (o 3=b 4=c))"});
  CorpusReport r3 = corpus_scores(pred3, gold3, kGermanPunct, false);
  CHECK(r3.overall.fp == 0);
  CHECK(r3.overall.fn == 1);

  // Two constituents collapsing onto the same masked leaf set count once.
  auto pred4 = corpus({"(ROOT (o (o 0=a 2=b) ($, 1=,)) 3=c 4=d)"});
  auto gold4 = corpus({"(ROOT (o 0=a 2=b) ($, 1=,) 3=c 4=d)"});
  CorpusReport r4 = corpus_scores(pred4, gold4, kGermanPunct, false);
  CHECK(r4.overall.tp == 1);  // both pred sets become {0,1}; one match
  CHECK(r4.overall.fp == 0);
  CHECK(r4.overall.fn == 0);
}

TEST_CASE("swapping pred and gold swaps precision and recall") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 3 + static_cast<int>(rng() % 6);
    auto a = random_instance(rng(), n, 1, 2)[0];
    auto b = random_instance(rng() | 1, n, 1, 2)[0];
    std::vector<std::string> words;
    for (int i = 0; i < n; ++i) words.push_back("w" + std::to_string(i));
    SentenceRecord ra{ParseTree::create(n, a.constituents(), {}, words)};
    SentenceRecord rb{ParseTree::create(n, b.constituents(), {}, words)};
    std::vector<SentenceRecord> pa{ra}, pb{rb};
    CorpusReport fwd = corpus_scores(pa, pb, kNoPunct, false);
    CorpusReport rev = corpus_scores(pb, pa, kNoPunct, false);
    CHECK(fwd.overall.precision() == rev.overall.recall());
    CHECK(fwd.overall.recall() == rev.overall.precision());
    CHECK(fwd.overall.f1() == rev.overall.f1());
  }
}

TEST_CASE("per-label recall totals cover the gold constituents") {
  auto pred = corpus({"(ROOT (o 0=a 1=b) (o 2=c 3=d))"});
  auto gold = corpus({"(ROOT (NP 0=a 1=b) (VP (NP 2=c 3=d)))"});
  CorpusReport report = corpus_scores(pred, gold, kNoPunct, true);
  REQUIRE(report.has_label_recall);
  // Unary chain {2,3}: NP kept (innermost); totals must sum to gold count.
  CHECK(report.label_recall.at("NP").total == 2);
  CHECK(report.label_recall.at("NP").matched == 2);
  int64_t total = 0;
  for (const auto& [label, lr] : report.label_recall) total += lr.total;
  CHECK(total == report.overall.tp + report.overall.fn);
}

TEST_CASE("evaluation metric differs from the ensemble objective") {
  // The ensemble objective counts trivial constituents; the metric does not.
  auto pred = corpus({"(ROOT 0=a 1=b 2=c)"});
  auto gold = corpus({"(ROOT (o 0=a 1=b) 2=c)"});
  CorpusReport report = corpus_scores(pred, gold, kNoPunct, false);
  CHECK(report.overall.f1() == 0.0);
  CHECK(pairwise_f1(pred[0].tree, gold[0].tree) == Rational(8, 9));
}

TEST_CASE("report rendering") {
  auto gold = corpus({"(ROOT (o 0=a 1=b) 2=c)"});
  CorpusReport report = corpus_scores(gold, gold, kNoPunct, false);
  std::string text = report_text(report);
  CHECK(text.find("F1 overall/cont/disco: 100.0/100.0/0.0") != std::string::npos);
  std::string json = report_json(report);
  CHECK(json.find("\"f1\": 100.0") != std::string::npos);
  CHECK(json.find("\"sentences\": 1") != std::string::npos);
}

TEST_CASE("alignment errors") {
  auto one = corpus({"(ROOT 0=a 1=b)"});
  auto two = corpus({"(ROOT 0=a 1=b)", "(ROOT 0=c 1=d)"});
  CHECK_THROWS_AS(corpus_scores(one, two, kNoPunct, false), DataError);
  auto three = corpus({"(ROOT 0=a 1=b 2=c)"});
  CHECK_THROWS_AS(corpus_scores(one, three, kNoPunct, false), DataError);
}
