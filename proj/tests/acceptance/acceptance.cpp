// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unistd.h>

#include "cli.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "spanbridge/alignproject.hpp"
#include "spanbridge/easyproject.hpp"
#include "spanbridge/formats.hpp"
#include "spanbridge/ftdata.hpp"
#include "spanbridge/fuzzy.hpp"
#include "spanbridge/markers.hpp"
#include "spanbridge/metrics.hpp"
#include "spanbridge/tokens.hpp"
#include "spanbridge/utf8.hpp"

using namespace spanbridge;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Failure {
  std::string what;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

fs::path g_dir;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& content) { std::ofstream(p, std::ios::binary) << content; }

int cli_run(const std::vector<std::string>& args, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (err_text) *err_text = err.str();
  return code;
}

std::vector<AnnotatedSentence> fixpoint_corpus() {
  std::mt19937_64 rng(20240601);
  return gen::corpus(rng, 1000);
}

std::vector<AnnotatedSentence> entity_corpus() {
  std::mt19937_64 rng(777);
  std::vector<AnnotatedSentence> out;
  for (int i = 0; i < 500; ++i) out.push_back(gen::entity_sentence(rng));
  return out;
}

const std::map<std::string, std::string>& entity_lexicon() {
  static const std::map<std::string, std::string> lex = {
      {"England", "Inglaterra"}, {"New", "Nueva"},   {"City", "Ciudad"},   {"United", "Naciones"},
      {"Nations", "Unidas"},     {"Red", "Cruz"},    {"Cross", "Roja"},    {"Kyoto", "Kioto"},
      {"World", "Banco"},        {"Bank", "Mundial"}, {"met", "conoció"}, {"near", "cerca"},
      {"with", "con"},           {"and", "y"},       {"from", "desde"},   {"at", "en"},
  };
  return lex;
}

// Hand-applied lexicon: map each token, reverse the token order.
std::string reverse_translate(const std::string& text) {
  std::vector<std::string> tokens = split_whitespace(text);
  for (auto& t : tokens) {
    const auto it = entity_lexicon().find(t);
    if (it != entity_lexicon().end()) t = it->second;
  }
  std::reverse(tokens.begin(), tokens.end());
  return join_tokens(tokens);
}

// ---------------------------------------------------------------------------

std::string criterion1() {
  const auto corpus = fixpoint_corpus();
  const fs::path in = g_dir / "c1_in.jsonl", out = g_dir / "c1_out.jsonl", report = g_dir / "c1_report.json";
  spit(in, emit_span_jsonl(corpus));
  const auto t0 = std::chrono::steady_clock::now();
  std::string err;
  const int code = cli_run({"project", "--in", in.string(), "--out", out.string(), "--report", report.string(),
                            "--backend", "identity"},
                           &err);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  check(code == 0, "exit code " + std::to_string(code) + ": " + err);
  check(slurp(out) == slurp(in), "output differs from input");
  const json r = json::parse(slurp(report));
  check(r.at("projection_rate").get<double>() == 1.0, "projection rate " + r.at("projection_rate").dump());
  check(secs < 5.0, "took " + std::to_string(secs) + " s");
  char buf[160];
  std::snprintf(buf, sizeof buf, "1000 sentences, output == input, rate %.3f, exit 0, %.2f s",
                r.at("projection_rate").get<double>(), secs);
  return buf;
}

std::string criterion2() {
  check(fuzzy_ratio("abcd", "bcde") == 0.75, "ratio(abcd, bcde) != 0.75");
  std::mt19937_64 rng(42);
  for (int round = 0; round < 10000; ++round) {
    const std::size_t alphabet = 1 + gen::pick(rng, 8);
    auto draw = [&] {
      std::u32string s(gen::pick(rng, 17), U'a');
      for (auto& c : s) c = static_cast<char32_t>(U'a' + gen::pick(rng, alphabet));
      return s;
    };
    const std::u32string a = draw(), b = draw();
    const oracle::Fraction want = oracle::gestalt_ratio(a, b);
    check(2 * matched_length(a, b) == want.num && fuzzy_ratio(a, b) == want.value(),
          "mismatch on " + utf8::encode(a) + " / " + utf8::encode(b));
  }
  return "10000 random pairs equal the brute-force oracle; (abcd, bcde) = 0.75";
}

std::string criterion3() {
  const auto corpus = entity_corpus();
  LexiconBackend reverse({entity_lexicon(), {ReorderKind::Reverse, 0}, true});
  ProjectionConfig cfg;
  cfg.scheme.kind = MarkerKind::SquareBracket;
  cfg.matcher.threshold = 0.5;
  const CorpusProjection fuzzy = project_corpus(corpus, reverse, cfg);
  cfg.matcher.mode = MatchMode::Sequential;
  const CorpusProjection sequential = project_corpus(corpus, reverse, cfg);

  std::size_t labels_total = 0, fuzzy_right = 0, seq_right = 0, seq_wrong_sentences = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const AnnotatedSentence& src = corpus[i];
    const ProjectionOutcome& f = fuzzy.outcomes[i];
    const ProjectionOutcome& s = sequential.outcomes[i];
    check(f.status == OutcomeStatus::Projected && s.status == OutcomeStatus::Projected,
          "sentence " + std::to_string(i) + " not projected");
    check(f.sentence->text() == reverse_translate(src.text()), "translation differs from hand oracle");
    // Ground truth: entity k of the source is the (n-1-k)-th span of the target.
    const std::size_t n = src.spans().size();
    bool seq_all_right = true;
    for (std::size_t k = 0; k < n; ++k) {
      const LabeledSpan& want = src.spans()[n - 1 - k];
      ++labels_total;
      check(f.sentence->span_text(f.sentence->spans()[k]) == reverse_translate(src.span_text(want)),
            "span text mismatch in sentence " + std::to_string(i));
      if (f.sentence->spans()[k].label == want.label) ++fuzzy_right;
      if (s.sentence->spans()[k].label == want.label) {
        ++seq_right;
      } else {
        seq_all_right = false;
      }
    }
    if (!seq_all_right) ++seq_wrong_sentences;
  }
  check(fuzzy_right == labels_total, "fuzzy recovered " + std::to_string(fuzzy_right) + "/" + std::to_string(labels_total));
  check(seq_wrong_sentences == corpus.size(),
        "sequential mislabeled only " + std::to_string(seq_wrong_sentences) + " sentences");
  check(fuzzy_right >= seq_right, "fuzzy accuracy below sequential");
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "fuzzy %zu/%zu labels (100%%); sequential %zu/%zu labels, mislabels %zu/%zu permuted sentences",
                fuzzy_right, labels_total, seq_right, labels_total, seq_wrong_sentences, corpus.size());
  return buf;
}

// Deletes one closing bracket from the marked sentences it was told to corrupt.
class NoiseBackend final : public TranslationBackend {
 public:
  explicit NoiseBackend(std::map<std::string, std::size_t> victims) : victims_(std::move(victims)) {}
  TranslateResponse translate(const TranslateRequest& request) override {
    TranslateResponse r;
    for (const std::string& item : request.items) {
      std::string out = item;
      if (const auto it = victims_.find(item); it != victims_.end()) {
        std::size_t seen = 0;
        for (std::size_t p = 0; p < out.size(); ++p) {
          if (out[p] == ']' && seen++ == it->second) {
            out.erase(p, 1);
            break;
          }
        }
      }
      r.items.push_back(TranslationItem::success(out));
    }
    return r;
  }

 private:
  std::map<std::string, std::size_t> victims_;
};

std::string criterion4() {
  std::mt19937_64 rng(4444);
  std::vector<AnnotatedSentence> corpus;
  std::set<std::string> texts;
  while (corpus.size() < 1000) {
    AnnotatedSentence s = gen::entity_sentence(rng);
    if (texts.insert(s.text()).second) corpus.push_back(std::move(s));
  }
  const MarkerScheme brackets{MarkerKind::SquareBracket, true, {}};
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::map<std::string, std::size_t> victims;
  std::set<std::size_t> victim_index;
  for (std::size_t k = 0; k < corpus.size() / 4; ++k) {
    const std::size_t i = order[k];
    victims[insert_markers(corpus[i], brackets).text] = gen::pick(rng, corpus[i].spans().size());
    victim_index.insert(i);
  }
  NoiseBackend noise(std::move(victims));
  ProjectionConfig cfg;
  const CorpusProjection result = project_corpus(corpus, noise, cfg);
  const double rate = projection_rate(result.report);
  check(rate == 0.75, "projection rate " + std::to_string(rate));
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const ProjectionOutcome& o = result.outcomes[i];
    const bool victim = victim_index.count(i) > 0;
    check(victim == (o.status == OutcomeStatus::Filtered), "wrong status for sentence " + std::to_string(i));
    if (o.status == OutcomeStatus::Projected) {
      check(o.sentence->spans().size() == corpus[i].spans().size(), "count equality broken");
    }
  }
  check(result.sentences.size() == 750, "expected 750 surviving sentences");
  char buf[160];
  std::snprintf(buf, sizeof buf, "projection rate %.4f (750/1000); all survivors keep their span count", rate);
  return buf;
}

std::string criterion5() {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 10000; ++round) {
    const std::size_t ns = 1 + gen::pick(rng, 10), nt = 1 + gen::pick(rng, 10);
    Alignment a;
    const std::size_t n_links = gen::pick(rng, ns * nt + 1);
    for (std::size_t k = 0; k < n_links; ++k) a.links.insert({gen::pick(rng, ns), gen::pick(rng, nt)});
    const std::size_t b = gen::pick(rng, ns);
    const std::size_t e = b + 1 + gen::pick(rng, ns - b);
    const auto got = project_span_aligned({b, e}, a);
    const auto want = oracle::minmax_projection(b, e, a.links);
    check(got.has_value() == want.has_value() && (!got || (got->begin == want->first && got->end == want->second)),
          "alignment oracle mismatch on round " + std::to_string(round));
  }
  const auto corpus = fixpoint_corpus();
  std::vector<AlignedPair> pairs;
  for (const AnnotatedSentence& s : corpus) {
    AlignedPair p{split_whitespace(s.text()), split_whitespace(s.text()), {}};
    for (std::size_t i = 0; i < p.src_tokens.size(); ++i) p.alignment.links.insert({i, i});
    pairs.push_back(std::move(p));
  }
  const CorpusProjection result = project_corpus_aligned(corpus, pairs, 1);
  check(result.sentences == corpus, "identity alignment lost annotations");
  return "10000 random alignments equal the min/max oracle; identity alignment lossless on 1000 sentences";
}

std::string criterion6() {
  const auto corpus = fixpoint_corpus();
  std::vector<TokenList> plain, stripped;
  const MarkerScheme brackets{MarkerKind::SquareBracket, true, {}};
  for (const AnnotatedSentence& s : corpus) {
    plain.push_back(split_whitespace(s.text()));
    stripped.push_back(split_whitespace(strip_markers(insert_markers(s, brackets).text, brackets)));
  }
  check(corpus_bleu(plain, plain) == 1.0, "bleu(x, x) != 1");
  const std::vector<TokenList> hyp = {{"the", "the", "the", "the"}}, ref = {{"the", "cat"}};
  const double clipped = corpus_bleu(hyp, ref, BleuConfig{1});
  check(std::abs(clipped - 0.25) < 1e-9, "clipped example gave " + std::to_string(clipped));
  check(std::abs(clipped - oracle::bleu(hyp, ref, 1)) < 1e-12, "clipped example disagrees with oracle");
  const double strip_score = corpus_bleu(stripped, plain);
  check(strip_score == 1.0, "strip-then-BLEU gave " + std::to_string(strip_score));
  return "bleu(x, x) = 1.0; clipped unigram example = 0.25; strip-then-BLEU of marked corpus = 1.0";
}

std::string criterion7() {
  const std::string conll = slurp(fs::path(SPANBRIDGE_FIXTURES) / "ner.conll");
  const std::string squad = slurp(fs::path(SPANBRIDGE_FIXTURES) / "tydiqa.json");
  check(!conll.empty() && !squad.empty(), "fixtures missing");
  check(emit_conll(parse_conll(conll)) == conll, "CoNLL fixture not byte-identical");
  check(emit_squad(parse_squad(squad)) == squad, "SQuAD fixture not byte-identical");

  std::mt19937_64 rng(7);
  const std::vector<std::string> labels = {"PER", "LOC", "ORG", "MISC"};
  for (int round = 0; round < 1000; ++round) {
    const std::size_t n = 1 + gen::pick(rng, 15);
    std::vector<std::string> tokens, tags;
    std::vector<std::u32string> wide;
    for (std::size_t i = 0; i < n; ++i) {
      tokens.push_back(gen::vocabulary()[gen::pick(rng, gen::vocabulary().size())]);
      wide.push_back(utf8::decode(tokens.back()));
      const std::size_t r = gen::pick(rng, 3);
      if (r == 0 || (r == 2 && (tags.empty() || tags.back() == "O"))) {
        tags.push_back("O");
      } else if (r == 1) {
        tags.push_back("B-" + labels[gen::pick(rng, labels.size())]);
      } else {
        tags.push_back("I-" + tags.back().substr(2));
      }
    }
    const auto spans = spans_from_bio(tokens, tags);
    check(bio_from_spans(tokens, spans) == tags, "BIO -> spans -> BIO not identity");
    check(spans_from_bio(tokens, bio_from_spans(tokens, spans)) == spans, "spans -> BIO -> spans not identity");
    const auto runs = oracle::bio_runs(tags);
    const auto ranges = oracle::char_ranges(wide, runs);
    check(runs.size() == spans.size(), "span count differs from re-parse");
    for (std::size_t k = 0; k < spans.size(); ++k) {
      check(spans[k].start == ranges[k].first && spans[k].end == ranges[k].second && spans[k].label == runs[k].label,
            "span differs from re-parse");
    }
  }
  return "CoNLL and SQuAD fixtures byte-identical; BIO <-> spans identity on 1000 random sequences";
}

// One synthetic pair: segments are (source, target, is_entity, in_target, label).
struct Segment {
  std::string src;
  std::string tgt;
  bool entity = false;
  bool found = false;
  std::string label;
};

std::string criterion8() {
  struct Entity {
    std::string src, tgt, label;
  };
  const std::vector<Entity> entities = {
      {"Winston Churchill", "Winston Churchill", "PER"}, {"England", "Inglaterra", "LOC"},
      {"New York City", "Nueva York Ciudad", "LOC"},     {"Marie Curie", "Marie Curie", "PER"},
      {"United Nations", "Naciones Unidas", "ORG"},      {"Red Cross", "Cruz Roja", "ORG"},
      {"Kyoto", "Kioto", "LOC"},                         {"World Bank", "Banco Mundial", "ORG"},
  };
  const std::vector<std::pair<std::string, std::string>> filler = {
      {"visited", "visitó"}, {"today", "hoy"}, {"quietly", "tranquilamente"}, {"again", "otra vez"}};

  std::mt19937_64 rng(888);
  std::vector<ParallelPair> pairs;
  std::vector<FtPair> expected_a, expected_b;
  std::vector<std::size_t> b_length;
  for (int p = 0; p < 20; ++p) {
    std::vector<Segment> segs;
    std::vector<Entity> pool = entities;
    std::shuffle(pool.begin(), pool.end(), rng);
    const std::size_t n_ent = gen::pick(rng, 4);
    for (std::size_t e = 0; e < n_ent; ++e) {
      const auto& f = filler[gen::pick(rng, filler.size())];
      for (std::size_t r = gen::pick(rng, 3); r > 0; --r) segs.push_back({f.first, f.second});
      const bool found = gen::pick(rng, 4) != 0;
      std::string tgt = found ? pool[e].tgt : "alguien";
      if (found && gen::pick(rng, 5) == 0) {
        for (char& c : tgt) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      }
      segs.push_back({pool[e].src, tgt, true, found, pool[e].label});
    }
    segs.push_back({".", "."});

    std::string src, tgt, msrc, mtgt;
    std::vector<LabeledSpan> spans;
    std::size_t matched = 0;
    for (const Segment& s : segs) {
      for (std::string* t : {&src, &tgt, &msrc, &mtgt}) {
        if (!t->empty()) *t += ' ';
      }
      if (s.entity) {
        const std::size_t start = utf8::length(src);
        spans.push_back({0, start, start + utf8::length(s.src), s.label});
      }
      src += s.src;
      tgt += s.tgt;
      msrc += s.entity && s.found ? "[ " + s.src + " ]" : s.src;
      mtgt += s.entity && s.found ? "[ " + s.tgt + " ]" : s.tgt;
      if (s.entity && s.found) ++matched;
    }
    pairs.push_back({make_sentence(src, spans), tgt});
    if (matched >= 2) {
      expected_a.push_back({msrc, mtgt, matched});
    } else if (matched == 1) {
      expected_b.push_back({msrc, mtgt, matched});
      b_length.push_back(utf8::length(src));
    }
  }
  // B sorted by source length, longest first, ties in input order.
  std::vector<std::size_t> idx(expected_b.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return b_length[x] > b_length[y]; });
  std::vector<FtPair> expected = expected_a;
  for (std::size_t i : idx) expected.push_back(expected_b[i]);
  check(!expected_a.empty() && !expected_b.empty() && expected.size() < pairs.size(),
        "synthetic corpus lacks A, B or excluded pairs");

  LexiconBackend lex({entity_lexicon(), {}, true});
  FtDataConfig cfg;
  cfg.k = 100;
  const auto full = build_ft_pairs(pairs, lex, cfg);
  check(full == expected, "bracket placement or ordering differs from the constructed expectation");
  const std::size_t k = expected_a.size() + 2;
  cfg.k = k;
  const auto cut = build_ft_pairs(pairs, lex, cfg);
  check(cut == std::vector<FtPair>(expected.begin(), expected.begin() + static_cast<std::ptrdiff_t>(k)),
        "k-truncation wrong");

  std::set<std::pair<std::string, std::string>> originals;
  for (const ParallelPair& p : pairs) originals.insert({p.src.text(), p.tgt});
  const MarkerScheme brackets{MarkerKind::SquareBracket, true, {}};
  for (const FtPair& p : full) {
    check(originals.count({strip_markers(p.marked_src, brackets), strip_markers(p.marked_tgt, brackets)}) == 1,
          "stripping did not restore " + p.marked_src);
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "20 pairs -> %zu A + %zu B (%zu excluded) exact; k=%zu truncation exact; strip restores",
                expected_a.size(), expected_b.size(), pairs.size() - expected.size(), k);
  return buf;
}

std::string criterion9() {
  const auto corpus = fixpoint_corpus();
  const MarkerScheme placeholder{MarkerKind::Placeholder, true, "{label}{i}"};
  IdentityBackend identity;
  TranslateRequest req{{}, "en", "xx"};
  std::vector<MarkedText> marked;
  for (const AnnotatedSentence& s : corpus) {
    marked.push_back(insert_markers(s, placeholder));
    req.items.push_back(marked.back().text);
  }
  const TranslateResponse resp = translate(req, identity);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const ExtractionResult r = extract_markers(resp.items[i].output, placeholder, marked[i].marker_map);
    check(r.valid(), "sentence " + std::to_string(i) + ": " + r.diagnostic);
    check(r.clean_text == corpus[i].text(), "decoded text differs for sentence " + std::to_string(i));
    check(r.found_spans.size() == corpus[i].spans().size(), "span count differs");
    for (std::size_t k = 0; k < r.found_spans.size(); ++k) {
      const LabeledSpan& want = corpus[i].spans()[k];
      const FoundSpan& got = r.found_spans[k];
      check(got.start == want.start && got.end == want.end && got.marker_id == want.id, "span differs");
      const auto entry = std::find_if(marked[i].marker_map.begin(), marked[i].marker_map.end(),
                                      [&](const MarkerEntry& m) { return m.span_id == want.id; });
      check(entry != marked[i].marker_map.end() && entry->open == placeholder_token(placeholder, want.label, want.id),
            "label lost");
    }
  }
  ProjectionConfig cfg;
  cfg.scheme = placeholder;
  check(project_corpus(corpus, identity, cfg).sentences == corpus, "placeholder projection changed the corpus");
  return "1000 sentences: encode -> identity -> decode restores every text, span and label";
}

std::string criterion10() {
  std::vector<std::string> checks;
  const fs::path c1 = g_dir / "c10_fix.jsonl", c3 = g_dir / "c10_perm.jsonl";
  spit(c1, emit_span_jsonl(fixpoint_corpus()));
  spit(c3, emit_span_jsonl(entity_corpus()));
  std::string lex;
  for (const auto& [k, v] : entity_lexicon()) lex += k + "\t" + v + "\n";
  spit(g_dir / "c10_lex.tsv", lex);

  for (const auto& [name, input, extra] :
       std::vector<std::tuple<std::string, fs::path, std::vector<std::string>>>{
           {"identity", c1, {"--backend", "identity"}},
           {"reverse", c3,
            {"--backend", "lexicon", "--lexicon", (g_dir / "c10_lex.tsv").string(), "--reorder", "reverse"}}}) {
    for (const std::string jobs : {"1", "8"}) {
      std::vector<std::string> args = {"project", "--jobs", jobs, "--in", input.string(),
                                       "--out", (g_dir / (name + jobs + ".jsonl")).string(),
                                       "--report", (g_dir / (name + jobs + ".json")).string()};
      args.insert(args.end(), extra.begin(), extra.end());
      std::string err;
      const int code = cli_run(args, &err);
      check(code == 0, name + " --jobs " + jobs + " exit " + std::to_string(code) + ": " + err);
    }
    check(slurp(g_dir / (name + "1.jsonl")) == slurp(g_dir / (name + "8.jsonl")), name + " outputs differ");
    check(slurp(g_dir / (name + "1.json")) == slurp(g_dir / (name + "8.json")), name + " reports differ");
  }
  return "criterion-1 and criterion-3 runs byte-identical for --jobs 1 and --jobs 8";
}

}  // namespace

int main() {
  g_dir = fs::temp_directory_path() / ("spanbridge_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(g_dir);

  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
      {"identity fixpoint", criterion1},     {"fuzzy-ratio oracle", criterion2},
      {"permutation recovery", criterion3},  {"marker-loss filtering", criterion4},
      {"alignment oracle", criterion5},      {"BLEU", criterion6},
      {"format round trips", criterion7},    {"ftdata selection", criterion8},
      {"placeholder round trip", criterion9}, {"determinism", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string status = "PASS", detail;
    try {
      detail = criteria[i].second();
    } catch (const Failure& f) {
      status = "FAIL";
      detail = f.what;
    } catch (const std::exception& e) {
      status = "FAIL";
      detail = std::string("exception: ") + e.what();
    }
    if (status == "FAIL") ++failed;
    std::cout << status << " [" << (i + 1) << "] " << criteria[i].first << ": " << detail << std::endl;
  }
  fs::remove_all(g_dir);
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
