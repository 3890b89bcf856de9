#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "spanbridge/alignproject.hpp"
#include "spanbridge/error.hpp"
#include "spanbridge/tokens.hpp"

using namespace spanbridge;

namespace {

Alignment links(std::initializer_list<std::pair<std::size_t, std::size_t>> l) { return Alignment{{l}}; }

AlignedPair identity_pair(const AnnotatedSentence& s) {
  AlignedPair p{split_whitespace(s.text()), split_whitespace(s.text()), {}};
  for (std::size_t i = 0; i < p.src_tokens.size(); ++i) p.alignment.links.insert({i, i});
  return p;
}

}  // namespace

TEST(Pharaoh, Parse) {
  EXPECT_EQ(parse_pharaoh("0-0 1-2 2-1", 3, 3), links({{0, 0}, {1, 2}, {2, 1}}));
  EXPECT_EQ(parse_pharaoh("", 3, 3), Alignment{});
  EXPECT_EQ(parse_pharaoh("  1-1   1-1 ", 2, 2), links({{1, 1}}));
}

TEST(Pharaoh, Errors) {
  EXPECT_THROW(parse_pharaoh("3-0", 3, 3), ParseError);
  EXPECT_THROW(parse_pharaoh("0-3", 3, 3), ParseError);
  EXPECT_THROW(parse_pharaoh("0-0 1:1", 3, 3), ParseError);
  EXPECT_THROW(parse_pharaoh("0-", 3, 3), ParseError);
  EXPECT_THROW(parse_pharaoh("-1-0", 3, 3), ParseError);
  try {
    parse_pharaoh("0-0 1-1 x-2", 3, 3);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
  }
}

TEST(Pharaoh, EmitRoundTrip) {
  const Alignment a = links({{2, 1}, {0, 0}, {1, 2}});
  EXPECT_EQ(emit_pharaoh(a), "0-0 1-2 2-1");
  EXPECT_EQ(parse_pharaoh(emit_pharaoh(a), 3, 3), a);
}

TEST(ProjectSpan, MinMaxRule) {
  EXPECT_EQ(project_span_aligned({0, 3}, links({{0, 2}, {1, 3}, {2, 4}})), (TokenRange{2, 5}));
  EXPECT_FALSE(project_span_aligned({0, 1}, links({{1, 1}})).has_value());
  EXPECT_EQ(project_span_aligned({0, 2}, links({{0, 1}, {1, 5}})), (TokenRange{1, 6}));
}

TEST(ProjectSpan, AgreesWithOracle) {
  std::mt19937_64 rng(4);
  for (int round = 0; round < 2000; ++round) {
    const std::size_t ns = 1 + gen::pick(rng, 10), nt = 1 + gen::pick(rng, 10);
    Alignment a;
    const std::size_t n_links = gen::pick(rng, ns * nt + 1);
    for (std::size_t k = 0; k < n_links; ++k) a.links.insert({gen::pick(rng, ns), gen::pick(rng, nt)});
    const std::size_t b = gen::pick(rng, ns);
    const std::size_t e = b + 1 + gen::pick(rng, ns - b);
    const auto got = project_span_aligned({b, e}, a);
    const auto want = oracle::minmax_projection(b, e, a.links);
    ASSERT_EQ(got.has_value(), want.has_value());
    if (got) {
      EXPECT_EQ(got->begin, want->first);
      EXPECT_EQ(got->end, want->second);
    }
  }
}

TEST(ProjectSentence, IdentityAlignmentLossless) {
  std::mt19937_64 rng(6);
  for (const AnnotatedSentence& s : gen::corpus(rng, 300)) {
    const ProjectionOutcome out = project_sentence_aligned(s, identity_pair(s));
    ASSERT_EQ(out.status, OutcomeStatus::Projected);
    EXPECT_EQ(*out.sentence, s);
    EXPECT_TRUE(out.diagnostics.empty());
  }
}

TEST(ProjectSentence, TruncatedSpanFlagged) {
  const AnnotatedSentence s("He lives in New York City .", {{0, 12, 25, "LOC"}});
  const AlignedPair pair{split_whitespace(s.text()),
                         {"他", "住在", "纽约", "市", "。"},
                         links({{0, 0}, {1, 1}, {2, 1}, {3, 2}, {4, 2}, {6, 4}})};
  const ProjectionOutcome out = project_sentence_aligned(s, pair);
  ASSERT_EQ(out.status, OutcomeStatus::Projected);
  EXPECT_EQ(out.sentence->span_text(out.sentence->spans()[0]), "纽约");
  const auto full = oracle::minmax_projection(3, 6, {{3, 2}, {4, 2}, {5, 3}});
  EXPECT_LT(out.sentence->spans()[0].length(), 5u);
  EXPECT_EQ(full->second - full->first, 2u);
  ASSERT_EQ(out.diagnostics.size(), 1u);
  EXPECT_NE(out.diagnostics[0].find("boundary-risk"), std::string::npos);
}

TEST(ProjectSentence, OverlapAndUnprojectableFiltered) {
  const AnnotatedSentence s("Ann met Bob", {{0, 0, 3, "PER"}, {1, 8, 11, "PER"}});
  const std::vector<std::string> tgt = {"Ann", "traf", "Bob"};
  const ProjectionOutcome overlap =
      project_sentence_aligned(s, {split_whitespace(s.text()), tgt, links({{0, 0}, {2, 0}})});
  EXPECT_EQ(overlap.status, OutcomeStatus::Filtered);
  EXPECT_EQ(overlap.reason, reason::kOverlap);
  const ProjectionOutcome lost =
      project_sentence_aligned(s, {split_whitespace(s.text()), tgt, links({{0, 0}})});
  EXPECT_EQ(lost.status, OutcomeStatus::Filtered);
  EXPECT_EQ(lost.reason, reason::kUnprojectable);
}

TEST(ProjectSentence, ContractErrors) {
  const AnnotatedSentence s("Ann met Bob", {{0, 0, 3, "PER"}});
  EXPECT_THROW(project_sentence_aligned(s, {{"Ann", "met"}, {"x"}, {}}), ContractError);
  EXPECT_THROW(project_sentence_aligned(s, {{"Ann", "met", "Bob"}, {"x"}, links({{0, 4}})}), ContractError);
  const AnnotatedSentence cut("Ann met Bob", {{0, 0, 2, "PER"}});
  EXPECT_THROW(project_sentence_aligned(cut, identity_pair(cut)), ContractError);
}

TEST(ProjectSentence, RemovingLinksOnlyShrinksOrFilters) {
  std::mt19937_64 rng(12);
  for (const AnnotatedSentence& s : gen::corpus(rng, 300)) {
    AlignedPair full{split_whitespace(s.text()), {}, {}};
    const std::size_t nt = 1 + gen::pick(rng, 12);
    for (std::size_t j = 0; j < nt; ++j) full.tgt_tokens.push_back("t" + std::to_string(j));
    for (std::size_t i = 0; i < full.src_tokens.size(); ++i) {
      for (int r = 0; r < 2; ++r) full.alignment.links.insert({i, gen::pick(rng, nt)});
    }
    AlignedPair thinned = full;
    for (auto it = thinned.alignment.links.begin(); it != thinned.alignment.links.end();) {
      it = gen::pick(rng, 3) == 0 ? thinned.alignment.links.erase(it) : std::next(it);
    }
    const ProjectionOutcome a = project_sentence_aligned(s, full);
    const ProjectionOutcome b = project_sentence_aligned(s, thinned);
    if (b.status != OutcomeStatus::Projected) continue;
    // Target spans are ordered by target position, so compare labels as multisets.
    ASSERT_EQ(b.sentence->spans().size(), s.spans().size());
    std::multiset<std::string> want, got;
    for (const LabeledSpan& sp : s.spans()) want.insert(sp.label);
    for (const LabeledSpan& sp : b.sentence->spans()) got.insert(sp.label);
    EXPECT_EQ(got, want);
    if (a.status != OutcomeStatus::Projected) continue;
    // Each thinned span lies inside the full-alignment span carrying the same label.
    for (const LabeledSpan& shrunk : b.sentence->spans()) {
      const auto outer = std::find_if(a.sentence->spans().begin(), a.sentence->spans().end(), [&](const LabeledSpan& sp) {
        return sp.start <= shrunk.start && shrunk.end <= sp.end;
      });
      ASSERT_NE(outer, a.sentence->spans().end());
      EXPECT_EQ(outer->label, shrunk.label);
    }
  }
}

TEST(ProjectCorpus, ReportAndJobs) {
  std::mt19937_64 rng(13);
  const auto corpus = gen::corpus(rng, 200);
  std::vector<AlignedPair> pairs;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    AlignedPair p = identity_pair(corpus[i]);
    if (i % 5 == 0) p.alignment.links.clear();
    pairs.push_back(std::move(p));
  }
  const CorpusProjection one = project_corpus_aligned(corpus, pairs, 1);
  const CorpusProjection many = project_corpus_aligned(corpus, pairs, 8);
  EXPECT_EQ(one.sentences, many.sentences);
  EXPECT_EQ(one.report, many.report);
  EXPECT_EQ(one.report.total, 200u);
  EXPECT_EQ(one.report.projected + one.report.filtered + one.report.failed, 200u);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (one.outcomes[i].status == OutcomeStatus::Projected) {
      EXPECT_EQ(one.outcomes[i].sentence->spans().size(), corpus[i].spans().size());
    }
  }
  EXPECT_THROW(project_corpus_aligned(corpus, std::span(pairs).first(3), 1), ContractError);
}
