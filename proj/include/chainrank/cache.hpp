#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "chainrank/marking.hpp"

namespace chainrank {

// Content-addressed report cache: files keyed by a hash of the canonical
// group content (element image tables in canonical order) plus the marking
// and the invariant selection. CHAINRANK_CACHE_DIR selects the directory.
struct Cache {
  bool enabled = false;
  std::filesystem::path dir;

  static Cache resolve(bool no_cache) {
    Cache c;
    if (no_cache) return c;
    if (const char* env = std::getenv("CHAINRANK_CACHE_DIR")) {
      c.dir = env;
    } else if (const char* home = std::getenv("HOME")) {
      c.dir = std::filesystem::path(home) / ".cache" / "chainrank";
    } else {
      c.dir = std::filesystem::temp_directory_path() / "chainrank-cache";
    }
    c.enabled = true;
    return c;
  }

  std::optional<std::string> load(const std::string& key) const {
    if (!enabled) return std::nullopt;
    std::ifstream in(dir / (key + ".json"), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void store(const std::string& key, const std::string& text) const {
    if (!enabled) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) return;
    std::filesystem::path final_path = dir / (key + ".json");
    std::filesystem::path tmp = dir / (key + ".tmp");
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) return;
      out << text;
    }
    std::filesystem::rename(tmp, final_path, ec);
  }
};

inline std::string content_key(const MarkedGroup& m, std::string_view selector) {
  auto mix = [](std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h * 1099511628211ull;
  };
  std::uint64_t h1 = 1469598103934665603ull;
  std::uint64_t h2 = 0xcbf29ce484222325ull ^ 0x5bd1e9955bd1e995ull;
  auto feed = [&](std::uint64_t v) {
    h1 = mix(h1, v);
    h2 = mix(h2, ~v);
  };
  const FinGroup& g = *m.carrier.parent;
  feed(g.degree());
  feed(g.order());
  for (Elem e = 0; e < g.order(); ++e)
    for (auto p : g.element(e).images()) feed(p);
  feed(0xfeedfeed);
  m.carrier.members.for_each_set([&](std::size_t e) { feed(e); });
  feed(0xabadcafe);
  for (Elem e : m.enumeration) feed(e);
  feed(m.seed);
  for (char c : selector) feed(static_cast<unsigned char>(c));
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(h1),
                static_cast<unsigned long long>(h2));
  return buf;
}

}  // namespace chainrank
