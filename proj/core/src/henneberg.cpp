#include "rigidlab/henneberg.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rigidlab {

bool HennebergSequence::type_i_only() const {
  return std::all_of(steps.begin(), steps.end(),
                     [](const HennebergStep& s) { return std::holds_alternative<TypeIStep>(s); });
}

std::string to_string(HennebergClass c) {
  switch (c) {
    case HennebergClass::type_i:
      return "I";
    case HennebergClass::type_ii:
      return "II";
    case HennebergClass::not_laman:
      return "not-laman";
  }
  return "unknown";
}

namespace {

class ReverseSearch {
 public:
  ReverseSearch(const Graph& g, bool type_i_only)
      : graph_(g), active_(static_cast<std::size_t>(g.vertex_count()), true),
        type_i_only_(type_i_only) {}

  std::optional<HennebergSequence> run() {
    std::vector<HennebergStep> reversed;
    if (!search(graph_.vertex_count(), reversed)) return std::nullopt;
    HennebergSequence seq;
    seq.n = graph_.vertex_count();
    int k = 0;
    for (int v = 0; v < seq.n; ++v) {
      if (active_[v]) seq.base[k++] = v;
    }
    seq.steps.assign(reversed.rbegin(), reversed.rend());
    return seq;
  }

 private:
  std::vector<int> active_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < graph_.vertex_count(); ++v) {
      if (active_[v]) out.push_back(v);
    }
    return out;
  }

  std::string state_key() const {
    std::string key;
    for (bool a : active_) key.push_back(a ? '1' : '0');
    for (const Edge& e : graph_.sorted_edges()) {
      key += ',' + std::to_string(e.u) + '-' + std::to_string(e.v);
    }
    return key;
  }

  bool search(int remaining, std::vector<HennebergStep>& reversed) {
    if (remaining == 3) return true;
    const std::string key = state_key();
    if (failed_.count(key) != 0) return false;

    for (int v = 0; v < graph_.vertex_count(); ++v) {
      if (!active_[v] || graph_.degree(v) != 2) continue;
      const auto& nb = graph_.neighbors(v);
      const int a = *nb.begin();
      const int b = *std::next(nb.begin());
      graph_.remove_edge(v, a);
      graph_.remove_edge(v, b);
      active_[v] = false;
      reversed.push_back(TypeIStep{v, a, b});
      if (search(remaining - 1, reversed)) return true;
      reversed.pop_back();
      active_[v] = true;
      graph_.add_edge(v, a);
      graph_.add_edge(v, b);
    }

    if (!type_i_only_) {
      for (int v = 0; v < graph_.vertex_count(); ++v) {
        if (!active_[v] || graph_.degree(v) != 3) continue;
        const std::vector<int> nb(graph_.neighbors(v).begin(), graph_.neighbors(v).end());
        const std::array<std::array<int, 3>, 3> choices{{
            {nb[0], nb[1], nb[2]},
            {nb[0], nb[2], nb[1]},
            {nb[1], nb[2], nb[0]},
        }};
        for (const auto& [p, q, r] : choices) {
          if (graph_.has_edge(p, q)) continue;
          for (int w : nb) graph_.remove_edge(v, w);
          graph_.add_edge(p, q);
          active_[v] = false;
          if (laman_check(graph_.induced(active_vertices()))) {
            reversed.push_back(TypeIIStep{v, p, q, r});
            if (search(remaining - 1, reversed)) return true;
            reversed.pop_back();
          }
          active_[v] = true;
          graph_.remove_edge(p, q);
          for (int w : nb) graph_.add_edge(v, w);
        }
      }
    }

    failed_.insert(key);
    return false;
  }

  Graph graph_;
  std::vector<bool> active_;
  bool type_i_only_;
  std::set<std::string> failed_;
};

}  // namespace

std::optional<HennebergSequence> extract_sequence(const Graph& g, ExtractOptions options) {
  if (g.vertex_count() < 3 || !laman_check(g)) return std::nullopt;
  return ReverseSearch(g, options.type_i_only).run();
}

HennebergClass classify(const Graph& g) {
  if (g.vertex_count() < 3 || !laman_check(g)) return HennebergClass::not_laman;
  return extract_sequence(g, {.type_i_only = true}) ? HennebergClass::type_i
                                                     : HennebergClass::type_ii;
}

namespace {

struct ReplayState {
  Graph graph;
  std::vector<int> order;  // vertices in order of introduction
  std::vector<bool> present;

  explicit ReplayState(int n) : graph(n), present(static_cast<std::size_t>(n), false) {}

  void require_present(int v, const char* what) const {
    if (v < 0 || v >= graph.vertex_count() || !present[v]) {
      throw std::invalid_argument(std::string(what) + " references unknown vertex " +
                                  std::to_string(v));
    }
  }

  void introduce(int v) {
    if (v < 0 || v >= graph.vertex_count()) {
      throw std::invalid_argument("new vertex " + std::to_string(v) + " out of range");
    }
    if (present[v]) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " introduced twice");
    }
    present[v] = true;
    order.push_back(v);
  }
};

template <typename OnStage>
Graph replay_impl(const HennebergSequence& seq, OnStage&& on_stage) {
  if (seq.n < 3) throw std::invalid_argument("a Henneberg sequence needs n >= 3");
  ReplayState st(seq.n);
  const auto [x, y, z] = seq.base;
  st.introduce(x);
  st.introduce(y);
  st.introduce(z);
  st.graph.add_edge(x, y);
  st.graph.add_edge(y, z);
  st.graph.add_edge(x, z);
  on_stage(st.graph.induced(st.order));

  for (const HennebergStep& step : seq.steps) {
    if (const auto* s1 = std::get_if<TypeIStep>(&step)) {
      st.require_present(s1->a, "type I step");
      st.require_present(s1->b, "type I step");
      if (s1->a == s1->b) throw std::invalid_argument("type I step needs two distinct vertices");
      st.introduce(s1->vertex);
      st.graph.add_edge(s1->vertex, s1->a);
      st.graph.add_edge(s1->vertex, s1->b);
    } else {
      const auto& s2 = std::get<TypeIIStep>(step);
      st.require_present(s2.a, "type II step");
      st.require_present(s2.b, "type II step");
      st.require_present(s2.c, "type II step");
      if (s2.a == s2.b || s2.a == s2.c || s2.b == s2.c) {
        throw std::invalid_argument("type II step needs three distinct vertices");
      }
      if (!st.graph.has_edge(s2.a, s2.b)) {
        throw std::invalid_argument("type II step removes absent edge (" + std::to_string(s2.a) +
                                    ", " + std::to_string(s2.b) + ")");
      }
      st.introduce(s2.vertex);
      st.graph.remove_edge(s2.a, s2.b);
      st.graph.add_edge(s2.vertex, s2.a);
      st.graph.add_edge(s2.vertex, s2.b);
      st.graph.add_edge(s2.vertex, s2.c);
    }
    Graph stage = st.graph.induced(st.order);
    if (!laman_check(stage)) {
      throw std::invalid_argument("intermediate graph after adding vertex " +
                                  std::to_string(st.order.back()) + " is not Laman");
    }
    on_stage(std::move(stage));
  }
  return st.graph;
}

}  // namespace

Graph replay(const HennebergSequence& seq) {
  Graph g = replay_impl(seq, [](Graph&&) {});
  if (3 + seq.steps.size() != static_cast<std::size_t>(seq.n)) {
    throw std::invalid_argument("sequence introduces " + std::to_string(3 + seq.steps.size()) +
                                " of " + std::to_string(seq.n) + " vertices");
  }
  return g;
}

std::vector<Graph> replay_stages(const HennebergSequence& seq) {
  std::vector<Graph> stages;
  replay_impl(seq, [&](Graph&& g) { stages.push_back(std::move(g)); });
  return stages;
}

}  // namespace rigidlab
