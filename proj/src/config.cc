// Copyright 2026 The kbmap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kbmap/config.h"

#include <openssl/evp.h>

#include <charconv>
#include <fstream>
#include <istream>
#include <set>

#include "kbmap/kb_io.h"
#include "kbmap/text.h"

namespace kbmap {

namespace {

template <typename T>
T parse_unsigned(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || value.empty()) {
    throw InvalidInput(key + ": expected a non-negative integer, got '" + value +
                       "'");
  }
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  auto d = parse_double(value);
  if (!d) throw InvalidInput(key + ": expected a number, got '" + value + "'");
  return *d;
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = ascii_lower(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw InvalidInput(key + ": expected true or false, got '" + value + "'");
}

std::filesystem::path resolve(const std::string& value,
                              const std::filesystem::path& base) {
  if (value.empty()) return {};
  std::filesystem::path p(value);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p.lexically_normal();
}

std::vector<std::size_t> parse_ks(const std::string& key,
                                  const std::string& value) {
  std::vector<std::size_t> ks;
  for (std::string_view part : split(value, ',')) {
    const std::string v(trim(part));
    if (v.empty()) continue;
    ks.push_back(parse_unsigned<std::size_t>(key, v));
  }
  return ks;
}

std::string join_ks(const std::vector<std::size_t>& ks) {
  std::vector<std::string> parts;
  for (std::size_t k : ks) parts.push_back(std::to_string(k));
  return join(parts, ",");
}

const std::set<std::string>& runtime_keys() {
  static const std::set<std::string> keys{"output_dir", "concurrency",
                                          "batch_size", "timeout_seconds"};
  return keys;
}

}  // namespace

void apply_setting(PipelineConfig& c, const std::string& key,
                   const std::string& value,
                   const std::filesystem::path& base_dir) {
  if (key == "open_kb") {
    c.open_kb = resolve(value, base_dir);
  } else if (key == "closed_kb") {
    c.closed_kb = resolve(value, base_dir);
  } else if (key == "schema") {
    c.schema = resolve(value, base_dir);
  } else if (key == "taxonomy") {
    c.taxonomy = resolve(value, base_dir);
  } else if (key == "manual_table") {
    c.manual_table = resolve(value, base_dir);
  } else if (key == "output_dir") {
    c.output_dir = resolve(value, base_dir);
  } else if (key == "align_method") {
    c.align_method = parse_align_method(value);
  } else if (key == "top_k") {
    c.top_k = parse_unsigned<std::size_t>(key, value);
  } else if (key == "embedder") {
    c.embedder = value;
  } else if (key == "embed_dim") {
    c.embed_dim = parse_unsigned<std::size_t>(key, value);
  } else if (key == "generator") {
    c.generator = value;
  } else if (key == "k") {
    c.k = parse_unsigned<int>(key, value);
  } else if (key == "score_mode") {
    c.score_mode = parse_score_mode(value);
  } else if (key == "split_ratio") {
    c.split_ratio = parse_real(key, value);
  } else if (key == "seed") {
    c.seed = parse_unsigned<std::uint64_t>(key, value);
  } else if (key == "eval_ks") {
    c.eval_ks = parse_ks(key, value);
  } else if (key == "barred_k") {
    c.barred_k = parse_unsigned<std::size_t>(key, value);
  } else if (key == "manual_fallback") {
    c.manual_fallback = parse_bool(key, value);
  } else if (key == "rulemine") {
    c.rulemine = parse_bool(key, value);
  } else if (key == "min_support") {
    c.min_support = parse_unsigned<std::size_t>(key, value);
  } else if (key == "min_confidence") {
    c.min_confidence = parse_real(key, value);
  } else if (key == "top_tokens") {
    c.top_tokens = parse_unsigned<std::size_t>(key, value);
  } else if (key == "isa_min_count") {
    c.isa_min_count = parse_unsigned<std::size_t>(key, value);
  } else if (key == "isa_max_fraction") {
    c.isa_max_fraction = parse_real(key, value);
  } else if (key == "concurrency") {
    c.concurrency = parse_unsigned<std::size_t>(key, value);
  } else if (key == "batch_size") {
    c.batch_size = parse_unsigned<std::size_t>(key, value);
  } else if (key == "timeout_seconds") {
    c.timeout_seconds = parse_unsigned<int>(key, value);
  } else {
    throw InvalidInput("unknown config key '" + key + "'");
  }
}

PipelineConfig parse_config(std::istream& in,
                            const std::filesystem::path& base_dir) {
  PipelineConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, "expected key = value");
    }
    const std::string key(trim(body.substr(0, eq)));
    const std::string value(trim(body.substr(eq + 1)));
    try {
      apply_setting(config, key, value, base_dir);
    } catch (const InvalidInput& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return config;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_config(in, path.parent_path());
}

std::vector<std::pair<std::string, std::string>> config_entries(
    const PipelineConfig& c) {
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  return {
      {"open_kb", c.open_kb.string()},
      {"closed_kb", c.closed_kb.string()},
      {"schema", c.schema.string()},
      {"taxonomy", c.taxonomy.string()},
      {"manual_table", c.manual_table.string()},
      {"output_dir", c.output_dir.string()},
      {"align_method", std::string(to_string(c.align_method))},
      {"top_k", std::to_string(c.top_k)},
      {"embedder", c.embedder},
      {"embed_dim", std::to_string(c.embed_dim)},
      {"generator", c.generator},
      {"k", std::to_string(c.k)},
      {"score_mode", std::string(to_string(c.score_mode))},
      {"split_ratio", format_double(c.split_ratio)},
      {"seed", std::to_string(c.seed)},
      {"eval_ks", join_ks(c.eval_ks)},
      {"barred_k", std::to_string(c.barred_k)},
      {"manual_fallback", b(c.manual_fallback)},
      {"rulemine", b(c.rulemine)},
      {"min_support", std::to_string(c.min_support)},
      {"min_confidence", format_double(c.min_confidence)},
      {"top_tokens", std::to_string(c.top_tokens)},
      {"isa_min_count", std::to_string(c.isa_min_count)},
      {"isa_max_fraction", format_double(c.isa_max_fraction)},
      {"concurrency", std::to_string(c.concurrency)},
      {"batch_size", std::to_string(c.batch_size)},
      {"timeout_seconds", std::to_string(c.timeout_seconds)},
  };
}

void validate(const PipelineConfig& c) {
  auto must_exist = [](const char* what, const std::filesystem::path& p) {
    if (p.empty()) throw InvalidInput(std::string(what) + " is not set");
    if (!std::filesystem::is_regular_file(p)) {
      throw InvalidInput(std::string(what) + " not found: " + p.string());
    }
  };
  auto may_exist = [&](const char* what, const std::filesystem::path& p) {
    if (!p.empty()) must_exist(what, p);
  };
  must_exist("open_kb", c.open_kb);
  must_exist("closed_kb", c.closed_kb);
  may_exist("schema", c.schema);
  may_exist("taxonomy", c.taxonomy);
  may_exist("manual_table", c.manual_table);
  if (c.output_dir.empty()) throw InvalidInput("output_dir is not set");
  if (!(c.split_ratio > 0 && c.split_ratio < 1)) {
    throw InvalidInput("split_ratio must be in (0, 1)");
  }
  if (c.k < 1) throw InvalidInput("k must be at least 1");
  if (c.top_k < 1) throw InvalidInput("top_k must be at least 1");
  if (c.embed_dim < 1) throw InvalidInput("embed_dim must be at least 1");
  if (c.concurrency < 1) throw InvalidInput("concurrency must be at least 1");
  if (c.batch_size < 1) throw InvalidInput("batch_size must be at least 1");
  if (c.timeout_seconds < 1) throw InvalidInput("timeout_seconds must be positive");
  if (c.min_support < 1) throw InvalidInput("min_support must be at least 1");
  if (!(c.min_confidence >= 0 && c.min_confidence < 1)) {
    throw InvalidInput("min_confidence must be in [0, 1)");
  }
  if (!(c.isa_max_fraction > 0 && c.isa_max_fraction <= 1)) {
    throw InvalidInput("isa_max_fraction must be in (0, 1]");
  }
  for (const std::string* endpoint : {&c.embedder, &c.generator}) {
    const std::string& e = *endpoint;
    if (e != "mock" && e != "echo" && e.rfind("http://", 0) != 0 &&
        e.rfind("https://", 0) != 0) {
      throw InvalidInput("provider must be mock, echo or an http(s) URL: " + e);
    }
  }
  if (c.embedder == "echo") throw InvalidInput("embedder cannot be 'echo'");
}

std::string config_hash(const PipelineConfig& config) {
  std::string canonical;
  for (const auto& [key, value] : config_entries(config)) {
    if (runtime_keys().count(key)) continue;
    canonical += key + "=" + value + "\n";
  }
  return sha256_hex(canonical);
}

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1) {
      EVP_MD_CTX_free(ctx_);
      throw std::runtime_error("SHA-256 unavailable");
    }
  }
  ~Sha256() { EVP_MD_CTX_free(ctx_); }
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(const void* data, std::size_t n) {
    EVP_DigestUpdate(ctx_, data, n);
  }
  std::string hex() {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_, digest, &len);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
      out += kHex[digest[i] >> 4];
      out += kHex[digest[i] & 15];
    }
    return out;
  }

 private:
  EVP_MD_CTX* ctx_;
};

}  // namespace

std::string sha256_hex(std::string_view data) {
  Sha256 h;
  h.update(data.data(), data.size());
  return h.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  Sha256 h;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    h.update(buf, static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

}  // namespace kbmap
