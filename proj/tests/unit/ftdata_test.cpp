#include <gtest/gtest.h>

#include <set>

#include "spanbridge/error.hpp"
#include "spanbridge/ftdata.hpp"
#include "spanbridge/markers.hpp"

using namespace spanbridge;

namespace {

const MarkerScheme kBrackets{MarkerKind::SquareBracket, true, {}};

LexiconBackend german() {
  return LexiconBackend({{{"Germany", "Deutschland"}, {"Munich", "München"}, {"Anna", "Anna"}}, {}, true});
}

ParallelPair pair(const std::string& src, std::vector<std::pair<std::string, std::string>> gazetteer,
                  std::string tgt) {
  return {gazetteer_annotate(src, gazetteer), std::move(tgt)};
}

}  // namespace

TEST(MatchEntity, Examples) {
  const FtDataConfig cfg;
  EXPECT_EQ(match_entity_in_target("Berlin", "Ich wohne in Berlin .", cfg), (CodepointRange{13, 19}));
  EXPECT_EQ(match_entity_in_target("berlin", "Ich wohne in Berlin .", cfg), (CodepointRange{13, 19}));
  EXPECT_FALSE(match_entity_in_target("Paris", "Ich wohne in Berlin .", cfg).has_value());
  FtDataConfig exact;
  exact.match_case_fold = false;
  EXPECT_FALSE(match_entity_in_target("berlin", "Ich wohne in Berlin .", exact).has_value());
}

TEST(MatchEntity, SkipsTakenRanges) {
  const std::vector<CodepointRange> taken = {{0, 3}};
  EXPECT_EQ(match_entity_in_target("Ann", "Ann und Ann", FtDataConfig{}, taken), (CodepointRange{8, 11}));
  EXPECT_EQ(match_entity_in_target("東京", "在東京", FtDataConfig{}), (CodepointRange{1, 3}));
}

TEST(Gazetteer, LongestFirstNonOverlapping) {
  const std::vector<std::pair<std::string, std::string>> g = {{"New York", "LOC"}, {"New York City", "LOC"}, {"Ann", "PER"}};
  const AnnotatedSentence s = gazetteer_annotate("Ann saw New York City", g);
  ASSERT_EQ(s.spans().size(), 2u);
  EXPECT_EQ(s.span_texts(), (std::vector<std::string>{"Ann", "New York City"}));
}

TEST(BuildFtPairs, TwoEntitiesGoToPartitionA) {
  LexiconBackend lex = german();
  const std::vector<ParallelPair> pairs = {
      pair("Anna lives in Munich", {{"Anna", "PER"}, {"Munich", "LOC"}}, "Anna wohnt in München"),
  };
  const auto out = build_ft_pairs(pairs, lex, FtDataConfig{});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].marked_src, "[ Anna ] lives in [ Munich ]");
  EXPECT_EQ(out[0].marked_tgt, "[ Anna ] wohnt in [ München ]");
  EXPECT_EQ(out[0].entities, 2u);
}

TEST(BuildFtPairs, UnmatchedEntitiesAndExclusion) {
  LexiconBackend lex = german();
  const std::vector<ParallelPair> pairs = {
      pair("Anna visited Germany", {{"Anna", "PER"}, {"Germany", "LOC"}}, "Sie besuchte Deutschland"),
      pair("Munich", {{"Munich", "LOC"}}, "Monaco di Baviera"),
  };
  const auto out = build_ft_pairs(pairs, lex, FtDataConfig{});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].marked_src, "Anna visited [ Germany ]");
  EXPECT_EQ(out[0].marked_tgt, "Sie besuchte [ Deutschland ]");
}

TEST(BuildFtPairs, SelectionAndTruncation) {
  LexiconBackend lex = german();
  std::vector<ParallelPair> pairs;
  for (int i = 0; i < 6; ++i) {
    const std::string pad = i == 0 ? "" : " " + std::string(static_cast<std::size_t>(i), 'x');
    pairs.push_back(pair("Munich" + pad, {{"Munich", "LOC"}}, "München" + pad));
  }
  for (int i = 0; i < 4; ++i) {
    const std::string pad = i == 0 ? "" : " " + std::string(static_cast<std::size_t>(i), 'y');
    pairs.push_back(pair("Anna in Munich" + pad, {{"Anna", "PER"}, {"Munich", "LOC"}}, "Anna in München" + pad));
  }
  FtDataConfig cfg;
  cfg.k = 5;
  const auto out = build_ft_pairs(pairs, lex, cfg);
  ASSERT_EQ(out.size(), 5u);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(out[static_cast<std::size_t>(i)].entities, 2u);
  EXPECT_EQ(out[4].marked_src, "[ Munich ] xxxxx");

  cfg.k = 10;
  cfg.length_sort = LengthSort::Ascending;
  const auto asc = build_ft_pairs(pairs, lex, cfg);
  ASSERT_EQ(asc.size(), 10u);
  EXPECT_EQ(asc[4].marked_src, "[ Munich ]");
  EXPECT_EQ(asc[4].marked_tgt, "[ München ]");
  std::set<std::string> sources;
  for (const ParallelPair& p : pairs) sources.insert(p.src.text());
  for (const FtPair& p : asc) EXPECT_TRUE(sources.count(strip_markers(p.marked_src, kBrackets))) << p.marked_src;
}

TEST(BuildFtPairs, BackendFailureSkipsEntity) {
  class HalfBackend final : public TranslationBackend {
   public:
    TranslateResponse translate(const TranslateRequest& request) override {
      TranslateResponse r;
      for (const auto& item : request.items) {
        r.items.push_back(item == "Anna" ? TranslationItem::failure("x") : TranslationItem::success(item));
      }
      return r;
    }
  } backend;
  const std::vector<ParallelPair> pairs = {pair("Anna met Olaf", {{"Anna", "PER"}, {"Olaf", "PER"}}, "Anna traf Olaf")};
  const auto out = build_ft_pairs(pairs, backend, FtDataConfig{});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].marked_src, "Anna met [ Olaf ]");
}

TEST(BuildFtPairs, RejectsZeroBudgetAndTabs) {
  LexiconBackend lex = german();
  FtDataConfig cfg;
  cfg.k = 0;
  EXPECT_THROW(build_ft_pairs({}, lex, cfg), ValidationError);
  const std::vector<FtPair> bad = {{"a\tb", "c", 1}};
  EXPECT_THROW(emit_ft_tsv(bad), ValidationError);
  const std::vector<FtPair> good = {{"[ a ]", "[ b ]", 1}};
  EXPECT_EQ(emit_ft_tsv(good), "[ a ]\t[ b ]\n");
}
