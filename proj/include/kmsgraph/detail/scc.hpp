#pragma once

#include <algorithm>
#include <vector>

namespace kmsgraph::detail {

/**
 * Tarjan's algorithm, iterative. `adj[v]` lists successor vertices
 * (duplicates allowed). Returns the classes sorted internally and ordered
 * by least member.
 */
inline std::vector<std::vector<int>> strongly_connected(
    const std::vector<std::vector<int>>& adj) {
  int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0), on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> classes;
  int counter = 0;

  struct Frame {
    int v;
    size_t next;
  };

  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < adj[f.v].size()) {
        int w = adj[f.v][f.next++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        int v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        if (low[v] == index[v]) {
          std::vector<int> cls;
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            cls.push_back(w);
            if (w == v) break;
          }
          std::sort(cls.begin(), cls.end());
          classes.push_back(std::move(cls));
        }
      }
    }
  }
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return classes;
}

}  // namespace kmsgraph::detail
