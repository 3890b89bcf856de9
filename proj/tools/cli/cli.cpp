#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "spanbridge/alignproject.hpp"
#include "spanbridge/easyproject.hpp"
#include "spanbridge/error.hpp"
#include "spanbridge/formats.hpp"
#include "spanbridge/ftdata.hpp"
#include "spanbridge/markers.hpp"
#include "spanbridge/metrics.hpp"
#include "spanbridge/tokens.hpp"
#include "spanbridge/translate.hpp"

namespace spanbridge::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// A usage/configuration problem detected after flag parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  // shared
  std::string config_path;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string in;
  std::string out;
  std::string in_format = "jsonl";
  bool lenient_bio = false;
  std::string report;
  std::string src_lang = "en";
  std::string tgt_lang = "xx";

  // markers
  std::string scheme = "brackets";
  bool no_pad = false;
  std::string placeholder_format = "{label}{i}";

  // matcher
  std::string task = "spans";
  std::string matcher = "fuzzy";
  double threshold = 0.5;
  std::string on_no_match = "fallback";
  bool nfc = false;

  // backend
  std::string backend = "identity";
  std::string lexicon;
  std::string reorder = "none";
  std::uint64_t seed = 0;
  std::string cache;
  bool offline = false;
  std::string mt_url;
  int timeout_ms = 30000;
  int retries = 3;
  std::size_t batch_size = 32;
  std::size_t max_in_flight = 4;

  // align-project
  std::string translations;
  std::string alignments;

  // build-ftdata
  std::string src;
  std::string tgt;
  std::size_t k = 5000;
  std::string sort = "desc";
  bool no_case_fold = false;

  // bleu
  std::string hyp;
  std::string ref;
  std::string strip_scheme;
  std::size_t max_n = 4;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> read_lines(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

// Written to a sibling temp file and renamed into place.
void write_file_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw IoError("cannot write " + path);
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place: " + path);
  }
}

MarkerScheme make_scheme(const Options& o) {
  MarkerScheme scheme;
  scheme.kind = parse_marker_kind(o.scheme);
  scheme.pad_with_space = !o.no_pad;
  scheme.placeholder_format = o.placeholder_format;
  return scheme;
}

ProjectionConfig make_projection_config(const Options& o, const CLI::App& sub) {
  ProjectionConfig config;
  config.scheme = make_scheme(o);
  const bool identity_markers = config.scheme.kind == MarkerKind::XmlIndexed ||
                                config.scheme.kind == MarkerKind::Placeholder;
  const CLI::Option* matcher = sub.get_option_no_throw("--matcher");
  if (identity_markers && matcher != nullptr && matcher->count() > 0) {
    throw UsageError("--matcher does not apply to --scheme " + o.scheme + ": " + o.scheme +
                     " markers carry label identity, so no fuzzy or sequential matching is done");
  }
  config.matcher.mode = o.matcher == "sequential" ? MatchMode::Sequential : MatchMode::Fuzzy;
  config.matcher.threshold = o.threshold;
  config.matcher.on_no_match =
      o.on_no_match == "drop" ? NoMatchPolicy::DropSentence : NoMatchPolicy::PositionalFallback;
  config.matcher.nfc_normalize = o.nfc;
  config.src_lang = o.src_lang;
  config.tgt_lang = o.tgt_lang;
  config.jobs = o.jobs;
  validate(config.matcher);
  return config;
}

std::string mt_url(const Options& o) {
  if (const char* env = std::getenv("SPANBRIDGE_MT_URL"); env != nullptr && *env != '\0') {
    return env;
  }
  return o.mt_url;
}

std::shared_ptr<TranslationBackend> make_http(const Options& o) {
  HttpBackendConfig config;
  config.base_url = mt_url(o);
  if (config.base_url.empty()) throw UsageError("http backend needs --mt-url or SPANBRIDGE_MT_URL");
  config.timeout_ms = o.timeout_ms;
  config.attempts = o.retries;
  config.batch_size = o.batch_size;
  config.max_in_flight = o.max_in_flight;
  try {
    return std::make_shared<HttpBackend>(config);
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
}

std::shared_ptr<TranslationBackend> make_backend(const Options& o) {
  if (o.backend == "identity") return std::make_shared<IdentityBackend>();
  if (o.backend == "lexicon") {
    LexiconBackendConfig config;
    if (!o.lexicon.empty()) config.token_map = load_lexicon(o.lexicon);
    if (o.reorder == "reverse") {
      config.reorder = {ReorderKind::Reverse, 0};
    } else if (o.reorder == "permute") {
      config.reorder = {ReorderKind::FixedPermutation, o.seed};
    }
    return std::make_shared<LexiconBackend>(std::move(config));
  }
  if (o.backend == "http") return make_http(o);
  if (o.backend == "cache") {
    if (o.cache.empty()) throw UsageError("cache backend needs --cache");
    std::shared_ptr<TranslationBackend> inner;
    if (!o.offline && !mt_url(o).empty()) inner = make_http(o);
    return std::make_shared<CacheBackend>(o.cache, std::move(inner), o.offline);
  }
  throw UsageError("unknown backend " + o.backend);
}

std::vector<AnnotatedSentence> load_sentences(const Options& o, const std::string& path) {
  const std::string text = read_file(path);
  if (o.in_format == "conll") {
    return parse_conll(text, o.lenient_bio ? BioMode::Lenient : BioMode::Strict);
  }
  return parse_span_jsonl(text);
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_mark(const Options& o, std::ostream& err) {
  const MarkerScheme scheme = make_scheme(o);
  const std::vector<AnnotatedSentence> sentences = load_sentences(o, o.in);
  std::string output;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    try {
      const MarkedText marked = insert_markers(sentences[i], scheme);
      json markers = json::array();
      for (const MarkerEntry& entry : marked.marker_map) {
        markers.push_back({{"span_id", entry.span_id}, {"open", entry.open}, {"close", entry.close}});
      }
      output += json{{"index", i}, {"marked", marked.text}, {"markers", std::move(markers)}}.dump();
      output += '\n';
    } catch (const PreexistingMarkerError& e) {
      err << "sentence " << i << ": " << e.what() << "\n";
      ++skipped;
    }
  }
  write_file_atomic(o.out, output);
  return skipped == 0 ? kOk : kPartial;
}

void write_report(const Options& o, const ProjectionReport& report, std::ostream& err) {
  if (!o.report.empty()) write_file_atomic(o.report, report_to_json(report) + "\n");
  err << "projected " << report.projected << "/" << report.total << " (filtered "
      << report.filtered << ", failed " << report.failed << ")\n";
}

int cmd_project(const Options& o, const CLI::App& sub, std::ostream& err) {
  const ProjectionConfig config = make_projection_config(o, sub);
  const std::shared_ptr<TranslationBackend> backend = make_backend(o);

  if (o.task == "qa") {
    const SquadCorpus corpus = parse_squad(read_file(o.in));
    const QaCorpusProjection result = project_qa_corpus(corpus.examples, *backend, config);
    write_file_atomic(o.out, emit_squad({corpus.version, result.examples}) + "\n");
    write_report(o, result.report, err);
    return result.report.projected == result.report.total ? kOk : kPartial;
  }

  const std::vector<AnnotatedSentence> sentences = load_sentences(o, o.in);
  const CorpusProjection result = project_corpus(sentences, *backend, config);
  for (std::size_t i = 0; i < result.outcomes.size(); ++i) {
    const ProjectionOutcome& outcome = result.outcomes[i];
    if (outcome.status != OutcomeStatus::Projected) {
      err << "sentence " << i << ": " << to_string(outcome.status) << " (" << outcome.reason << ")";
      for (const std::string& d : outcome.diagnostics) err << " " << d;
      err << "\n";
    }
  }
  write_file_atomic(o.out, emit_span_jsonl(result.sentences));
  write_report(o, result.report, err);
  return result.report.projected == result.report.total ? kOk : kPartial;
}

int cmd_align_project(const Options& o, std::ostream& err) {
  const std::vector<AnnotatedSentence> sentences = load_sentences(o, o.in);
  const std::vector<std::string> translations = read_lines(o.translations);
  const std::vector<std::string> alignment_lines = read_lines(o.alignments);
  if (translations.size() != sentences.size() || alignment_lines.size() != sentences.size()) {
    throw ParseError("input has " + std::to_string(sentences.size()) + " sentences but " +
                     std::to_string(translations.size()) + " translations and " +
                     std::to_string(alignment_lines.size()) + " alignment lines");
  }
  std::vector<AlignedPair> pairs;
  pairs.reserve(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    AlignedPair pair{split_whitespace(sentences[i].text()), split_whitespace(translations[i]), {}};
    try {
      pair.alignment = parse_pharaoh(alignment_lines[i], pair.src_tokens.size(), pair.tgt_tokens.size());
    } catch (const ParseError& e) {
      throw ParseError(e.what(), i + 1);
    }
    pairs.push_back(std::move(pair));
  }
  const CorpusProjection result = project_corpus_aligned(sentences, pairs, o.jobs);
  for (std::size_t i = 0; i < result.outcomes.size(); ++i) {
    const ProjectionOutcome& outcome = result.outcomes[i];
    if (outcome.status != OutcomeStatus::Projected || !outcome.diagnostics.empty()) {
      err << "sentence " << i << ": " << to_string(outcome.status);
      if (!outcome.reason.empty()) err << " (" << outcome.reason << ")";
      for (const std::string& d : outcome.diagnostics) err << " " << d;
      err << "\n";
    }
  }
  write_file_atomic(o.out, emit_span_jsonl(result.sentences));
  write_report(o, result.report, err);
  return result.report.projected == result.report.total ? kOk : kPartial;
}

int cmd_build_ftdata(const Options& o, std::ostream& err) {
  const std::vector<AnnotatedSentence> sources = parse_span_jsonl(read_file(o.src));
  const std::vector<std::string> targets = read_lines(o.tgt);
  if (targets.size() != sources.size()) {
    throw ParseError(std::to_string(sources.size()) + " source sentences but " +
                     std::to_string(targets.size()) + " target lines");
  }
  std::vector<ParallelPair> pairs;
  for (std::size_t i = 0; i < sources.size(); ++i) pairs.push_back({sources[i], targets[i]});

  FtDataConfig config;
  config.k = o.k;
  config.match_case_fold = !o.no_case_fold;
  config.length_sort = o.sort == "asc" ? LengthSort::Ascending : LengthSort::Descending;
  config.src_lang = o.src_lang;
  config.tgt_lang = o.tgt_lang;
  const std::shared_ptr<TranslationBackend> backend = make_backend(o);
  const std::vector<FtPair> built = build_ft_pairs(pairs, *backend, config);
  write_file_atomic(o.out, emit_ft_tsv(built));
  err << "wrote " << built.size() << " fine-tuning pairs\n";
  return kOk;
}

int cmd_stats(const Options& o, std::ostream& out) {
  out << stats_to_json(corpus_stats(load_sentences(o, o.in))) << "\n";
  return kOk;
}

int cmd_bleu(const Options& o, std::ostream& out) {
  const std::vector<std::string> hyp_lines = read_lines(o.hyp);
  const std::vector<std::string> ref_lines = read_lines(o.ref);
  std::optional<MarkerScheme> strip;
  if (!o.strip_scheme.empty()) {
    strip = MarkerScheme{parse_marker_kind(o.strip_scheme), !o.no_pad, {}};
  }
  std::vector<TokenList> hyps;
  std::vector<TokenList> refs;
  for (const std::string& line : hyp_lines) {
    hyps.push_back(split_whitespace(strip ? strip_markers(line, *strip) : line));
  }
  for (const std::string& line : ref_lines) refs.push_back(split_whitespace(line));
  out << bleu_to_json(compute_bleu(hyps, refs, BleuConfig{o.max_n})) << "\n";
  return kOk;
}

int cmd_rate(const Options& o, std::ostream& out) {
  const ProjectionReport report = report_from_json(read_file(o.report));
  const json doc = {{"projection_rate", projection_rate(report)},
                    {"projected", report.projected},
                    {"total", report.total}};
  out << doc.dump(2) << "\n";
  return kOk;
}

int cmd_warm_cache(const Options& o, const CLI::App& sub, std::ostream& out) {
  if (o.cache.empty()) throw UsageError("warm-cache needs --cache");
  if (o.backend == "cache") throw UsageError("warm-cache needs a live backend, not cache");
  const ProjectionConfig config = make_projection_config(o, sub);
  const std::shared_ptr<TranslationBackend> backend = make_backend(o);
  TranslateRequest request;
  if (o.task == "qa") {
    request = qa_projection_request(parse_squad(read_file(o.in)).examples, config);
  } else {
    request = projection_request(load_sentences(o, o.in), config);
  }
  const WarmCacheResult result = warm_cache(std::span(&request, 1), *backend, o.cache);
  out << json{{"added", result.added}, {"failed", result.failed}}.dump() << "\n";
  return result.failed == 0 ? kOk : kPartial;
}

// ---------------------------------------------------------------------------
// Flag wiring

void add_input(CLI::App* sub, Options& o, bool formats = true) {
  sub->add_option("--in", o.in, "Input corpus")->required();
  if (formats) {
    sub->add_option("--in-format", o.in_format, "Input format")
        ->check(CLI::IsMember({"jsonl", "conll"}))
        ->capture_default_str();
    sub->add_flag("--lenient-bio", o.lenient_bio, "Read a stray I-X tag as B-X (CoNLL input)");
  }
}

void add_scheme(CLI::App* sub, Options& o) {
  sub->add_option("--scheme", o.scheme, "Marker scheme")
      ->check(CLI::IsMember({"brackets", "xml", "quotes", "placeholder"}))
      ->capture_default_str();
  sub->add_flag("--no-pad", o.no_pad, "Do not pad markers with spaces");
  sub->add_option("--placeholder-format", o.placeholder_format,
                  "Placeholder template; {label} and {i} are substituted")
      ->capture_default_str();
}

void add_languages(CLI::App* sub, Options& o) {
  sub->add_option("--src-lang", o.src_lang, "Source language code")->capture_default_str();
  sub->add_option("--tgt-lang", o.tgt_lang, "Target language code")->capture_default_str();
}

void add_backend(CLI::App* sub, Options& o) {
  sub->add_option("--backend", o.backend, "Translation backend")
      ->check(CLI::IsMember({"identity", "lexicon", "cache", "http"}))
      ->capture_default_str();
  sub->add_option("--lexicon", o.lexicon, "Lexicon TSV (source<TAB>target) for the lexicon backend");
  sub->add_option("--reorder", o.reorder, "Lexicon backend token reordering")
      ->check(CLI::IsMember({"none", "reverse", "permute"}))
      ->capture_default_str();
  sub->add_option("--seed", o.seed, "Seed for --reorder permute")->capture_default_str();
  sub->add_option("--cache", o.cache, "JSONL translation cache");
  sub->add_flag("--offline", o.offline, "Fail on cache misses instead of calling the MT service");
  sub->add_option("--mt-url", o.mt_url, "Translation service base URL (SPANBRIDGE_MT_URL wins)");
  sub->add_option("--timeout-ms", o.timeout_ms, "HTTP timeout per request")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--retries", o.retries, "HTTP attempts per batch")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--batch-size", o.batch_size, "Texts per HTTP request")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--max-in-flight", o.max_in_flight, "Concurrent HTTP requests")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_languages(sub, o);
}

void add_matcher(CLI::App* sub, Options& o) {
  sub->add_option("--task", o.task, "What to project")
      ->check(CLI::IsMember({"spans", "qa"}))
      ->capture_default_str();
  sub->add_option("--matcher", o.matcher, "Label assignment for anonymous markers")
      ->check(CLI::IsMember({"fuzzy", "sequential"}))
      ->capture_default_str();
  sub->add_option("--threshold", o.threshold, "Fuzzy match threshold (ratio must exceed it)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sub->add_option("--on-no-match", o.on_no_match, "When fuzzy matching leaves spans unassigned")
      ->check(CLI::IsMember({"fallback", "drop"}))
      ->capture_default_str();
  sub->add_flag("--nfc", o.nfc, "NFC-normalize strings before fuzzy matching");
}

// key=value lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::size_t line_no = 0;
  for (std::string line : read_lines(path)) {
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto trim = [](std::string s) {
      const std::size_t b = s.find_first_not_of(" \t");
      if (b == std::string::npos) return std::string();
      const std::size_t e = s.find_last_not_of(" \t");
      s = s.substr(b, e - b + 1);
      if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
      return s;
    };
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(line_no) + ": expected key=value");
    entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return entries;
}

std::string find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].starts_with("--config=")) return args[i].substr(9);
  }
  return {};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"spanbridge: project span annotations across languages"};
  app.name("spanbridge");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", o.config_path, "key=value file pre-setting any flag (flags win)");
  app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);

  CLI::App* mark = app.add_subcommand("mark", "Insert markers around spans");
  add_input(mark, o);
  mark->add_option("--out", o.out, "Marked JSONL output")->required();
  add_scheme(mark, o);

  CLI::App* project = app.add_subcommand("project", "Mark, translate and project annotations");
  add_input(project, o);
  project->add_option("--out", o.out, "Projected corpus")->required();
  project->add_option("--report", o.report, "Projection report JSON");
  add_scheme(project, o);
  add_matcher(project, o);
  add_backend(project, o);

  CLI::App* align = app.add_subcommand("align-project", "Project spans through word alignments");
  add_input(align, o);
  align->add_option("--translations", o.translations, "One translation per line")->required();
  align->add_option("--alignments", o.alignments, "One Pharaoh line per sentence")->required();
  align->add_option("--out", o.out, "Projected JSONL")->required();
  align->add_option("--report", o.report, "Projection report JSON");

  CLI::App* ftdata = app.add_subcommand("build-ftdata", "Build bracket-marked fine-tuning pairs");
  ftdata->add_option("--src", o.src, "Source span-JSON lines")->required();
  ftdata->add_option("--tgt", o.tgt, "Target sentences, one per line")->required();
  ftdata->add_option("--out", o.out, "Output TSV")->required();
  ftdata->add_option("--k", o.k, "Pair budget")->check(CLI::PositiveNumber)->capture_default_str();
  ftdata->add_option("--sort", o.sort, "Length order for single-entity pairs")
      ->check(CLI::IsMember({"desc", "asc"}))
      ->capture_default_str();
  ftdata->add_flag("--no-case-fold", o.no_case_fold, "Match entity translations case-sensitively");
  add_backend(ftdata, o);

  CLI::App* stats = app.add_subcommand("stats", "Corpus statistics as JSON");
  add_input(stats, o);

  CLI::App* bleu = app.add_subcommand("bleu", "Corpus BLEU as JSON");
  bleu->add_option("--hyp", o.hyp, "Hypotheses, one per line")->required();
  bleu->add_option("--ref", o.ref, "References, one per line")->required();
  bleu->add_option("--strip-scheme", o.strip_scheme, "Strip these markers from hypotheses first")
      ->check(CLI::IsMember({"brackets", "xml", "quotes", "placeholder"}));
  bleu->add_flag("--no-pad", o.no_pad, "Markers were inserted without padding");
  bleu->add_option("--max-n", o.max_n, "Highest n-gram order")->check(CLI::PositiveNumber)->capture_default_str();

  CLI::App* rate = app.add_subcommand("rate", "Projection rate from a report");
  rate->add_option("--report", o.report, "Projection report JSON")->required();

  CLI::App* warm = app.add_subcommand("warm-cache", "Translate and cache what project would request");
  add_input(warm, o);
  add_scheme(warm, o);
  add_matcher(warm, o);
  add_backend(warm, o);

  std::vector<std::string> argv;
  try {
    const std::string config_path = find_config_path(args);
    std::vector<std::string> injected;
    if (!config_path.empty()) {
      std::string sub_name;
      for (const std::string& a : args) {
        if (!a.starts_with("-") && app.get_subcommand_no_throw(a) != nullptr) {
          sub_name = a;
          break;
        }
      }
      const CLI::App* chosen = sub_name.empty() ? nullptr : app.get_subcommand(sub_name);
      for (const auto& [key, value] : read_config(config_path)) {
        const std::string flag = "--" + key;
        if (key == "config") continue;
        const bool known_here = (chosen != nullptr && chosen->get_option_no_throw(flag) != nullptr) ||
                                app.get_option_no_throw(flag) != nullptr;
        if (known_here) {
          injected.push_back(flag + "=" + value);
          continue;
        }
        bool known_elsewhere = false;
        for (const CLI::App* s : app.get_subcommands([](const CLI::App*) { return true; })) {
          if (s->get_option_no_throw(flag) != nullptr) known_elsewhere = true;
        }
        if (!known_elsewhere) throw UsageError(config_path + ": unknown key '" + key + "'");
      }
    }
    // Config values go first so explicit flags (taken last) override them.
    bool placed = injected.empty();
    for (const std::string& a : args) {
      argv.push_back(a);
      if (!placed && !a.starts_with("-") && app.get_subcommand_no_throw(a) != nullptr) {
        argv.insert(argv.end(), injected.begin(), injected.end());
        placed = true;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (mark->parsed()) return cmd_mark(o, err);
    if (project->parsed()) return cmd_project(o, *project, err);
    if (align->parsed()) return cmd_align_project(o, err);
    if (ftdata->parsed()) return cmd_build_ftdata(o, err);
    if (stats->parsed()) return cmd_stats(o, out);
    if (bleu->parsed()) return cmd_bleu(o, out);
    if (rate->parsed()) return cmd_rate(o, out);
    if (warm->parsed()) return cmd_warm_cache(o, *warm, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kFatal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFatal;
  }
  return kUsage;
}

}  // namespace spanbridge::cli
