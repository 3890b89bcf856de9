#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "spanbridge/error.hpp"

namespace spanbridge {

struct TranslateRequest {
  std::vector<std::string> items;
  std::string src_lang;
  std::string tgt_lang;
};

struct TranslationItem {
  std::string output;
  bool ok = true;
  std::string error;  // set when !ok

  static TranslationItem success(std::string text) { return {std::move(text), true, {}}; }
  static TranslationItem failure(std::string message) { return {{}, false, std::move(message)}; }

  friend bool operator==(const TranslationItem&, const TranslationItem&) = default;
};

/// Same length and order as the request, on every path.
struct TranslateResponse {
  std::vector<TranslationItem> items;
};

/// Implementations must tolerate concurrent translate() calls.
class TranslationBackend {
 public:
  virtual ~TranslationBackend() = default;
  virtual TranslateResponse translate(const TranslateRequest& request) = 0;
};

/// Validates the request, dispatches, and checks the response shape.
/// Throws ContractError on an invalid request or a misbehaving backend.
TranslateResponse translate(const TranslateRequest& request, TranslationBackend& backend);

class IdentityBackend final : public TranslationBackend {
 public:
  TranslateResponse translate(const TranslateRequest& request) override;
};

enum class ReorderKind { None, Reverse, FixedPermutation };

struct Reorder {
  ReorderKind kind = ReorderKind::None;
  std::uint64_t seed = 0;  // FixedPermutation only
};

struct LexiconBackendConfig {
  std::map<std::string, std::string> token_map;
  Reorder reorder;
  bool passthrough_markers = true;
};

/// Deterministic test double: whitespace tokens are looked up in a lexicon and
/// reordered, with marker pairs travelling around their span tokens. Not an
/// MT system.
class LexiconBackend final : public TranslationBackend {
 public:
  /// Throws ValidationError if a marker token is used as a lexicon key.
  explicit LexiconBackend(LexiconBackendConfig config);
  TranslateResponse translate(const TranslateRequest& request) override;

  std::string translate_one(std::string_view text) const;

 private:
  LexiconBackendConfig config_;
};

/// Reads a two-column TSV lexicon (source TAB target).
std::map<std::string, std::string> load_lexicon(const std::filesystem::path& path);

bool is_marker_token(std::string_view token) noexcept;

std::string sha256_hex(std::string_view data);

/// Append-only JSONL store of {"src_lang","tgt_lang","input","output"} records,
/// keyed by (src_lang, tgt_lang, sha256(input)). One writer, many readers.
class TranslationCache {
 public:
  explicit TranslationCache(std::filesystem::path path);

  std::optional<std::string> lookup(std::string_view src_lang, std::string_view tgt_lang,
                                    std::string_view input) const;
  /// Returns false if the key was already present. Throws IoError on write failure.
  bool insert(std::string_view src_lang, std::string_view tgt_lang, std::string_view input,
              std::string_view output);
  std::size_t size() const;
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  static std::string key(std::string_view src_lang, std::string_view tgt_lang,
                         std::string_view input);

  std::filesystem::path path_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, std::string> entries_;
};

/// Serves from the cache; misses go to `inner` (and are recorded) unless
/// offline or no inner backend is given, in which case they fail as "uncached".
class CacheBackend final : public TranslationBackend {
 public:
  CacheBackend(std::filesystem::path cache_path, std::shared_ptr<TranslationBackend> inner,
               bool offline);
  TranslateResponse translate(const TranslateRequest& request) override;

  TranslationCache& cache() noexcept { return cache_; }

 private:
  TranslationCache cache_;
  std::shared_ptr<TranslationBackend> inner_;
  bool offline_;
};

struct HttpBackendConfig {
  std::string base_url;  // http://host[:port][/prefix]
  int timeout_ms = 30000;
  int attempts = 3;
  int backoff_ms = 500;  // doubles after each failed attempt
  std::size_t batch_size = 32;
  std::size_t max_in_flight = 4;
};

/// POST {base_url}/translate with {"texts","src_lang","tgt_lang"}; expects
/// {"translations": [...]}. A batch that still fails after all attempts
/// yields a BackendError on each of its items.
class HttpBackend final : public TranslationBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config);
  TranslateResponse translate(const TranslateRequest& request) override;

 private:
  std::vector<TranslationItem> translate_batch(std::span<const std::string> texts,
                                               const std::string& src_lang,
                                               const std::string& tgt_lang) const;

  HttpBackendConfig config_;
  std::string scheme_host_port_;
  std::string path_prefix_;
};

struct WarmCacheResult {
  std::size_t added = 0;
  std::size_t failed = 0;
};

class WarmCacheError : public IoError {
 public:
  WarmCacheError(const std::string& message, std::size_t added)
      : IoError(message + " (" + std::to_string(added) + " entries written)"), added_(added) {}
  std::size_t added() const noexcept { return added_; }

 private:
  std::size_t added_;
};

/// Translates every uncached item through `backend` and appends the results.
/// Items the backend fails on are skipped and counted in `failed`.
WarmCacheResult warm_cache(std::span<const TranslateRequest> requests, TranslationBackend& backend,
                           const std::filesystem::path& cache_path);

}  // namespace spanbridge
