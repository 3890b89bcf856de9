#include "spanbridge/translate.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "spanbridge/tokens.hpp"

namespace spanbridge {

using nlohmann::json;

TranslateResponse translate(const TranslateRequest& request, TranslationBackend& backend) {
  if (request.src_lang.empty() || request.tgt_lang.empty()) {
    throw ContractError("translate request needs source and target languages");
  }
  for (std::size_t i = 0; i < request.items.size(); ++i) {
    if (request.items[i].empty()) {
      throw ContractError("translate request item " + std::to_string(i) + " is empty");
    }
  }
  if (request.items.empty()) return {};
  TranslateResponse response = backend.translate(request);
  if (response.items.size() != request.items.size()) {
    throw ContractError("backend returned " + std::to_string(response.items.size()) +
                        " items for a request of " + std::to_string(request.items.size()));
  }
  return response;
}

TranslateResponse IdentityBackend::translate(const TranslateRequest& request) {
  TranslateResponse response;
  response.items.reserve(request.items.size());
  for (const std::string& item : request.items) response.items.push_back(TranslationItem::success(item));
  return response;
}

// ---------------------------------------------------------------------------
// Lexicon test double

namespace {

bool is_xml_tag(std::string_view token, bool closing) {
  const std::size_t prefix = closing ? 2 : 1;
  if (token.size() < prefix + 2 || token.front() != '<' || token.back() != '>') return false;
  if (closing && token[1] != '/') return false;
  const std::string_view name = token.substr(prefix, token.size() - prefix - 1);
  return std::all_of(name.begin(), name.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

bool is_open_marker(std::string_view token) { return token == "[" || is_xml_tag(token, false); }

bool closes(std::string_view open, std::string_view token) {
  if (open == "[") return token == "]";
  if (open == "\"") return token == "\"";
  return is_xml_tag(token, true) && token.substr(2) == open.substr(1);
}

// A plain token, or a marker pair with the tokens it wraps.
struct Unit {
  std::string open;
  std::vector<std::string> tokens;
  std::string close;

  bool is_group() const { return !open.empty(); }
};

std::vector<Unit> group_units(const std::vector<std::string>& tokens) {
  std::vector<Unit> units;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    if (is_open_marker(tok) || tok == "\"") {
      std::size_t j = i + 1;
      while (j < tokens.size() && !closes(tok, tokens[j]) && !is_marker_token(tokens[j])) ++j;
      if (j < tokens.size() && closes(tok, tokens[j])) {
        units.push_back({tok, {tokens.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                               tokens.begin() + static_cast<std::ptrdiff_t>(j)},
                         tokens[j]});
        i = j;
        continue;
      }
    }
    units.push_back({{}, {tok}, {}});
  }
  return units;
}

}  // namespace

bool is_marker_token(std::string_view token) noexcept {
  return token == "[" || token == "]" || token == "\"" || is_xml_tag(token, false) ||
         is_xml_tag(token, true);
}

LexiconBackend::LexiconBackend(LexiconBackendConfig config) : config_(std::move(config)) {
  for (const auto& [key, value] : config_.token_map) {
    if (is_marker_token(key)) {
      throw ValidationError("marker token '" + key + "' cannot be a lexicon key");
    }
  }
}

std::string LexiconBackend::translate_one(std::string_view text) const {
  std::vector<Unit> units = group_units(split_whitespace(text));

  for (Unit& unit : units) {
    for (std::string& tok : unit.tokens) {
      if (!unit.is_group() && is_marker_token(tok)) {
        if (!config_.passthrough_markers) tok.clear();
        continue;
      }
      if (const auto it = config_.token_map.find(tok); it != config_.token_map.end()) tok = it->second;
    }
    if (unit.is_group() && !config_.passthrough_markers) {
      unit.open.clear();
      unit.close.clear();
    }
  }

  switch (config_.reorder.kind) {
    case ReorderKind::None:
      break;
    case ReorderKind::Reverse:
      std::reverse(units.begin(), units.end());
      for (Unit& unit : units) std::reverse(unit.tokens.begin(), unit.tokens.end());
      break;
    case ReorderKind::FixedPermutation: {
      std::mt19937_64 rng(config_.reorder.seed);
      for (std::size_t i = units.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(units[i - 1], units[j]);
      }
      break;
    }
  }

  std::vector<std::string> out;
  for (const Unit& unit : units) {
    if (!unit.open.empty()) out.push_back(unit.open);
    for (const std::string& tok : unit.tokens) {
      if (!tok.empty()) out.push_back(tok);
    }
    if (!unit.close.empty()) out.push_back(unit.close);
  }
  return join_tokens(out);
}

TranslateResponse LexiconBackend::translate(const TranslateRequest& request) {
  TranslateResponse response;
  response.items.reserve(request.items.size());
  for (const std::string& item : request.items) {
    response.items.push_back(TranslationItem::success(translate_one(item)));
  }
  return response;
}

std::map<std::string, std::string> load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon " + path.string());
  std::map<std::string, std::string> lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos || tab == 0 ||
        tab + 1 == line.size()) {
      throw ParseError("lexicon line needs exactly 'source<TAB>target'", line_no);
    }
    lexicon[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return lexicon;
}

// ---------------------------------------------------------------------------
// Cache

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int size = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &size, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(size * 2);
  for (unsigned int i = 0; i < size; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0x0F]);
  }
  return hex;
}

TranslationCache::TranslationCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json record = json::parse(line);
      entries_.emplace(key(record.at("src_lang").get<std::string>(),
                           record.at("tgt_lang").get<std::string>(),
                           record.at("input").get<std::string>()),
                       record.at("output").get<std::string>());
    } catch (const json::exception& e) {
      throw ParseError(path_.string() + ": bad cache record: " + e.what(), line_no);
    }
  }
}

std::string TranslationCache::key(std::string_view src_lang, std::string_view tgt_lang,
                                  std::string_view input) {
  std::string k;
  k.reserve(src_lang.size() + tgt_lang.size() + 66);
  k.append(src_lang).append(1, '\t').append(tgt_lang).append(1, '\t').append(sha256_hex(input));
  return k;
}

std::optional<std::string> TranslationCache::lookup(std::string_view src_lang,
                                                    std::string_view tgt_lang,
                                                    std::string_view input) const {
  const std::string k = key(src_lang, tgt_lang, input);
  std::lock_guard lock(mutex_);
  if (const auto it = entries_.find(k); it != entries_.end()) return it->second;
  return std::nullopt;
}

bool TranslationCache::insert(std::string_view src_lang, std::string_view tgt_lang,
                              std::string_view input, std::string_view output) {
  const std::string k = key(src_lang, tgt_lang, input);
  std::lock_guard lock(mutex_);
  if (entries_.contains(k)) return false;
  const json record = {{"src_lang", src_lang},
                       {"tgt_lang", tgt_lang},
                       {"input", input},
                       {"output", output}};
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  out << record.dump() << '\n';
  out.flush();
  if (!out) throw IoError("cannot append to cache " + path_.string());
  entries_.emplace(k, std::string(output));
  return true;
}

std::size_t TranslationCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

CacheBackend::CacheBackend(std::filesystem::path cache_path,
                           std::shared_ptr<TranslationBackend> inner, bool offline)
    : cache_(std::move(cache_path)), inner_(std::move(inner)), offline_(offline) {}

TranslateResponse CacheBackend::translate(const TranslateRequest& request) {
  TranslateResponse response;
  response.items.resize(request.items.size());
  TranslateRequest misses{{}, request.src_lang, request.tgt_lang};
  std::vector<std::size_t> miss_index;

  for (std::size_t i = 0; i < request.items.size(); ++i) {
    if (auto hit = cache_.lookup(request.src_lang, request.tgt_lang, request.items[i])) {
      response.items[i] = TranslationItem::success(std::move(*hit));
    } else if (offline_ || !inner_) {
      response.items[i] = TranslationItem::failure("uncached");
    } else {
      misses.items.push_back(request.items[i]);
      miss_index.push_back(i);
    }
  }
  if (misses.items.empty()) return response;

  TranslateResponse fresh = spanbridge::translate(misses, *inner_);
  for (std::size_t k = 0; k < miss_index.size(); ++k) {
    TranslationItem& item = fresh.items[k];
    if (item.ok) cache_.insert(request.src_lang, request.tgt_lang, misses.items[k], item.output);
    response.items[miss_index[k]] = std::move(item);
  }
  return response;
}

// ---------------------------------------------------------------------------
// HTTP

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
  const std::string& url = config_.base_url;
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ValidationError("MT URL must look like http://host[:port][/prefix]: " + url);
  }
  const std::size_t path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  if (path_start != std::string::npos) path_prefix_ = url.substr(path_start);
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
  if (config_.attempts < 1) throw ValidationError("HTTP attempts must be >= 1");
  if (config_.batch_size == 0) throw ValidationError("batch size must be >= 1");
  if (config_.max_in_flight == 0) throw ValidationError("max in-flight must be >= 1");
}

std::vector<TranslationItem> HttpBackend::translate_batch(std::span<const std::string> texts,
                                                          const std::string& src_lang,
                                                          const std::string& tgt_lang) const {
  httplib::Client client(scheme_host_port_);
  const auto timeout = std::chrono::milliseconds(config_.timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  const std::string body =
      json{{"texts", std::vector<std::string>(texts.begin(), texts.end())},
           {"src_lang", src_lang},
           {"tgt_lang", tgt_lang}}
          .dump();
  std::string error;
  for (int attempt = 1; attempt <= config_.attempts; ++attempt) {
    if (auto res = client.Post(path_prefix_ + "/translate", body, "application/json")) {
      if (res->status >= 200 && res->status < 300) {
        try {
          const json reply = json::parse(res->body);
          const json& translations = reply.at("translations");
          if (translations.size() != texts.size()) {
            throw std::runtime_error("got " + std::to_string(translations.size()) +
                                     " translations for " + std::to_string(texts.size()) +
                                     " texts");
          }
          std::vector<TranslationItem> items;
          items.reserve(texts.size());
          for (const json& t : translations) items.push_back(TranslationItem::success(t.get<std::string>()));
          return items;
        } catch (const std::exception& e) {
          error = std::string("malformed response: ") + e.what();
        }
      } else {
        error = "HTTP " + std::to_string(res->status);
      }
    } else {
      error = "request failed: " + httplib::to_string(res.error());
    }
    if (attempt < config_.attempts) {
      std::this_thread::sleep_for(std::chrono::milliseconds(config_.backoff_ms) *
                                  (1LL << (attempt - 1)));
    }
  }
  std::vector<TranslationItem> failed(
      texts.size(),
      TranslationItem::failure(error + " after " + std::to_string(config_.attempts) + " attempts"));
  return failed;
}

TranslateResponse HttpBackend::translate(const TranslateRequest& request) {
  const std::size_t n = request.items.size();
  const std::size_t batches = (n + config_.batch_size - 1) / config_.batch_size;
  TranslateResponse response;
  response.items.resize(n);

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t b = next.fetch_add(1); b < batches; b = next.fetch_add(1)) {
      const std::size_t begin = b * config_.batch_size;
      const std::size_t end = std::min(n, begin + config_.batch_size);
      std::vector<TranslationItem> items = translate_batch(
          std::span(request.items).subspan(begin, end - begin), request.src_lang, request.tgt_lang);
      std::move(items.begin(), items.end(), response.items.begin() + static_cast<std::ptrdiff_t>(begin));
    }
  };
  const std::size_t threads = std::min(config_.max_in_flight, batches);
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  return response;
}

// ---------------------------------------------------------------------------

WarmCacheResult warm_cache(std::span<const TranslateRequest> requests, TranslationBackend& backend,
                           const std::filesystem::path& cache_path) {
  WarmCacheResult result;
  std::optional<TranslationCache> cache;
  try {
    cache.emplace(cache_path);
  } catch (const ParseError& e) {
    throw WarmCacheError(e.what(), 0);
  }
  for (const TranslateRequest& request : requests) {
    TranslateRequest misses{{}, request.src_lang, request.tgt_lang};
    std::set<std::string> queued;
    for (const std::string& item : request.items) {
      if (!cache->lookup(request.src_lang, request.tgt_lang, item) && queued.insert(item).second) {
        misses.items.push_back(item);
      }
    }
    if (misses.items.empty()) continue;
    const TranslateResponse response = translate(misses, backend);
    for (std::size_t i = 0; i < misses.items.size(); ++i) {
      const TranslationItem& item = response.items[i];
      if (!item.ok) {
        ++result.failed;
        continue;
      }
      try {
        if (cache->insert(request.src_lang, request.tgt_lang, misses.items[i], item.output)) {
          ++result.added;
        }
      } catch (const IoError& e) {
        throw WarmCacheError(e.what(), result.added);
      }
    }
  }
  return result;
}

}  // namespace spanbridge
