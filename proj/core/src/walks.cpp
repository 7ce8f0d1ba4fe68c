#include "kgapp/walks.hpp"

#include <algorithm>
#include <set>
#include <thread>

#include "kgapp/error.hpp"
#include "kgapp/io.hpp"

namespace kgapp {

std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view tag) {
  // splitmix64 finalizer over seed ^ FNV(tag)
  std::uint64_t z = seed ^ io::Fnv1a64(tag);
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Walk RandomWalk(const KnowledgeGraph& graph, const Term& start, int max_depth, Rng& rng) {
  if (max_depth < 1) throw DomainError("max_depth must be >= 1");
  Walk walk;
  walk.tokens.push_back(VertexToken(start));
  const Term* current = &start;
  for (int depth = 0; depth < max_depth; ++depth) {
    if (!current->is_iri()) break;
    auto edges = graph.OutEdges(current->value);
    if (edges.empty()) break;
    const Edge& edge = edges[UniformIndex(rng, edges.size())];
    walk.tokens.push_back(edge.predicate.value);
    walk.tokens.push_back(VertexToken(edge.object));
    current = &edge.object;
  }
  return walk;
}

std::vector<Walk> GenerateWalks(const KnowledgeGraph& graph, const WalkOptions& options) {
  if (options.max_depth < 1) throw DomainError("max_depth must be >= 1");
  if (options.walks_per_entity < 1) throw DomainError("walks_per_entity must be >= 1");
  std::vector<const std::string*> starts;
  for (const auto& [subject, edges] : graph.adjacency()) {
    if (!edges.empty()) starts.push_back(&subject);
  }
  std::vector<std::vector<Walk>> per_start(starts.size());

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng(DeriveSeed(options.seed, *starts[i]));
      const Term start = Term::Iri(*starts[i]);
      std::set<Walk> distinct;
      for (int w = 0; w < options.walks_per_entity; ++w) {
        Walk walk = RandomWalk(graph, start, options.max_depth, rng);
        if (distinct.insert(walk).second) per_start[i].push_back(std::move(walk));
      }
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(1, starts.size()));
  if (threads == 1) {
    work(0, starts.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (starts.size() + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(starts.size(), begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }

  std::vector<Walk> walks;
  for (auto& group : per_start) {
    for (auto& w : group) walks.push_back(std::move(w));
  }
  return walks;
}

bool IsValidPath(const KnowledgeGraph& graph, const Walk& walk) {
  const auto& t = walk.tokens;
  if (t.empty() || t.size() % 2 == 0) return false;
  for (std::size_t i = 0; i + 2 < t.size(); i += 2) {
    bool found = false;
    for (const auto& edge : graph.OutEdges(t[i])) {
      if (edge.predicate.value == t[i + 1] && VertexToken(edge.object) == t[i + 2]) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

std::string EscapeToken(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  for (char c : token) {
    switch (c) {
      case '%': out += "%25"; break;
      case ' ': out += "%20"; break;
      case '\t': out += "%09"; break;
      case '\n': out += "%0A"; break;
      case '\r': out += "%0D"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string UnescapeToken(std::string_view token) { return io::PercentDecode(token); }

std::string FormatWalks(const std::vector<Walk>& walks) {
  std::string out;
  for (const auto& walk : walks) {
    for (std::size_t i = 0; i < walk.tokens.size(); ++i) {
      if (i) out.push_back(' ');
      out += EscapeToken(walk.tokens[i]);
    }
    out.push_back('\n');
  }
  return out;
}

std::vector<Walk> ParseWalks(std::string_view text) {
  std::vector<Walk> walks;
  for (auto line : io::Split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    Walk walk;
    for (auto tok : io::Split(line, ' ')) walk.tokens.push_back(UnescapeToken(tok));
    walks.push_back(std::move(walk));
  }
  return walks;
}

}  // namespace kgapp
