#include "sbridge/free_group.hpp"

#include <cstdlib>
#include <queue>
#include <set>
#include <tuple>

#include "sbridge/errors.hpp"

namespace sbridge::braid {

FreeWord free_reduce(FreeWord w) {
  FreeWord out;
  out.reserve(w.size());
  for (int g : w) {
    if (!out.empty() && out.back() == -g) {
      out.pop_back();
    } else {
      out.push_back(g);
    }
  }
  return out;
}

FreeWord free_inverse(const FreeWord& w) {
  FreeWord out(w.rbegin(), w.rend());
  for (int& g : out) g = -g;
  return out;
}

FreeWord free_concat(const FreeWord& a, const FreeWord& b) {
  FreeWord out = a;
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(std::move(out));
}

namespace {

// Image of generator `gen` under the automorphism of a single letter:
//   s_k   : a_k -> a_k a_{k+1} a_k^-1,  a_{k+1} -> a_k
//   s_k^-1: a_k -> a_{k+1},             a_{k+1} -> a_{k+1}^-1 a_k a_{k+1}
FreeWord letter_image(int letter, int gen) {
  const int k = std::abs(letter);
  if (gen != k && gen != k + 1) return {gen};
  if (letter > 0) {
    if (gen == k) return {k, k + 1, -k};
    return {k};
  }
  if (gen == k) return {k + 1};
  return {-(k + 1), k, k + 1};
}

FreeWord substitute(int letter, const FreeWord& w) {
  FreeWord out;
  for (int g : w) {
    FreeWord img = letter_image(letter, std::abs(g));
    if (g < 0) img = free_inverse(img);
    out.insert(out.end(), img.begin(), img.end());
  }
  return free_reduce(std::move(out));
}

// a_{2k-1} -> t_k, a_{2k} -> t_k^-1
FreeWord to_tangle_group(const FreeWord& w) {
  FreeWord out;
  out.reserve(w.size());
  for (int g : w) {
    const int a = std::abs(g);
    const int t = (a + 1) / 2;
    const bool odd = a % 2 == 1;
    out.push_back((odd == (g > 0)) ? t : -t);
  }
  return free_reduce(std::move(out));
}

using Images = std::vector<FreeWord>;

// Right multiplication by one letter, acting on the images.
Images hurwitz_move(Images g, int letter) {
  const int k = std::abs(letter) - 1;
  const FreeWord a = g[k], b = g[k + 1];
  if (letter > 0) {
    g[k] = free_concat(free_concat(a, b), free_inverse(a));
    g[k + 1] = a;
  } else {
    g[k] = b;
    g[k + 1] = free_concat(free_concat(free_inverse(b), a), b);
  }
  return g;
}

bool caps_trivial(const Images& g) {
  for (std::size_t k = 0; k + 1 < g.size(); k += 2) {
    if (!free_concat(g[k], g[k + 1]).empty()) return false;
  }
  return true;
}

// Total image length, with unmatched caps counted twice more.
std::size_t tangle_cost(const Images& g) {
  std::size_t c = 0;
  for (const auto& w : g) c += w.size();
  for (std::size_t k = 0; k + 1 < g.size(); k += 2) {
    c += 2 * free_concat(g[k], g[k + 1]).size();
  }
  return c;
}

}  // namespace

std::vector<FreeWord> artin_images(const BraidWord& word) {
  std::vector<FreeWord> images(static_cast<std::size_t>(word.width));
  for (int j = 0; j < word.width; ++j) images[j] = {j + 1};
  for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) {
    for (auto& img : images) img = substitute(*it, img);
  }
  return images;
}

bool braid_equal(const BraidWord& a, const BraidWord& b) {
  if (a.width != b.width) return false;
  return artin_images(a) == artin_images(b);
}

std::vector<FreeWord> tangle_images(const BraidWord& word) {
  if (word.width % 2 != 0) throw InvalidBraid("caps need an even width");
  auto images = artin_images(word);
  for (auto& w : images) w = to_tangle_group(w);
  return images;
}

bool preserves_caps(const BraidWord& word) {
  return caps_trivial(tangle_images(word));
}

std::optional<std::vector<int>> untangle_caps(const BraidWord& word,
                                              std::size_t budget) {
  const int m = word.width;
  using Entry = std::tuple<std::size_t, std::size_t, Images, std::vector<int>>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;
  std::set<Images> seen;
  auto start = tangle_images(word);
  seen.insert(start);
  open.emplace(tangle_cost(start), 0, std::move(start), std::vector<int>{});
  for (std::size_t used = 0; !open.empty() && used < budget; ++used) {
    auto [cost, depth, g, path] = open.top();
    open.pop();
    if (caps_trivial(g)) return path;
    for (int k = 2; k < m; ++k) {
      for (int s : {1, -1}) {
        auto next = hurwitz_move(g, s * k);
        if (!seen.insert(next).second) continue;
        auto p = path;
        p.push_back(s * k);
        open.emplace(tangle_cost(next), p.size(), std::move(next),
                     std::move(p));
      }
    }
  }
  return std::nullopt;
}

}  // namespace sbridge::braid
