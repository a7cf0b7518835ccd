#include "sbridge/braid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "sbridge/errors.hpp"
#include "sbridge/free_group.hpp"

namespace sbridge::braid {

BraidWord::BraidWord(int w, std::vector<int> l) : width(w), letters(std::move(l)) {
  validate(*this);
}

void validate(const BraidWord& word) {
  if (word.width < 2) throw InvalidBraid("width must be at least 2");
  for (std::size_t i = 0; i < word.letters.size(); ++i) {
    const int g = std::abs(word.letters[i]);
    if (g < 1 || g > word.width - 1) {
      throw InvalidBraid("letter " + std::to_string(word.letters[i]) +
                         " at position " + std::to_string(i + 1) +
                         " outside [1, " + std::to_string(word.width - 1) + "]");
    }
  }
}

PlatDiagram::PlatDiagram(int n_, std::vector<int> letters) : n(n_) {
  if (n_ < 1) throw InvalidBraid("plat needs n >= 1");
  word = BraidWord(2 * n_, std::move(letters));
}

std::vector<int> permutation_of(const BraidWord& word) {
  validate(word);
  // at[p] = top position of the string currently at position p
  std::vector<int> at(static_cast<std::size_t>(word.width) + 1);
  std::iota(at.begin(), at.end(), 0);
  for (int g : word.letters) {
    const int i = std::abs(g);
    std::swap(at[i], at[i + 1]);
  }
  std::vector<int> perm(static_cast<std::size_t>(word.width));
  for (int p = 1; p <= word.width; ++p) perm[at[p] - 1] = p;
  return perm;
}

StrandPath trace_strand(const BraidWord& word, int strand) {
  validate(word);
  if (strand < 1 || strand > word.width) {
    throw InvalidBraid("strand id out of range");
  }
  std::vector<int> at(static_cast<std::size_t>(word.width) + 1);
  std::iota(at.begin(), at.end(), 0);
  StrandPath path{strand, {}};
  for (std::size_t k = 0; k < word.letters.size(); ++k) {
    const int g = word.letters[k];
    const int i = std::abs(g);
    if (at[i] == strand || at[i + 1] == strand) {
      const int other = at[i] == strand ? at[i + 1] : at[i];
      path.crossing_events.push_back({other, g > 0 ? 1 : -1, k});
    }
    std::swap(at[i], at[i + 1]);
  }
  return path;
}

int component_count(const PlatDiagram& plat) {
  const int m = plat.word.width;
  std::vector<int> parent(static_cast<std::size_t>(m) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  const auto perm = permutation_of(plat.word);
  std::vector<int> ends_at(static_cast<std::size_t>(m) + 1);
  for (int s = 1; s <= m; ++s) ends_at[perm[s - 1]] = s;
  for (int k = 1; k < m; k += 2) {
    unite(k, k + 1);
    unite(ends_at[k], ends_at[k + 1]);
  }
  int count = 0;
  for (int s = 1; s <= m; ++s) count += find(s) == s ? 1 : 0;
  return count;
}

PlatDiagram route_leftmost_home(const PlatDiagram& plat) {
  // Plain crossings would drag the cup along with the string and change the
  // link; instead the whole cup holding the string is walked left past its
  // neighbours, then turned over if the string sits on its right leg.
  PlatDiagram out = plat;
  auto& w = out.word.letters;
  const int end = permutation_of(plat.word)[0];
  for (int k = (end + 1) / 2 - 1; k >= 1; --k) {
    w.insert(w.end(), {2 * k, 2 * k - 1, 2 * k + 1, 2 * k});
  }
  if (permutation_of(out.word)[0] == 2) w.push_back(1);
  return out;
}

bool leftmost_is_free(const PlatDiagram& plat) {
  return trace_strand(plat.word, 1).crossing_events.empty();
}

std::size_t default_max_steps(const PlatDiagram& plat) {
  const std::size_t len = plat.word.size();
  return 20000 + 10 * len * len;
}

namespace {

bool try_free_cancel(std::vector<int>& w, std::size_t& at) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] == -w[i + 1]) {
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(i),
              w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      at = i;
      return true;
    }
  }
  return false;
}

bool try_strand_bigon(BraidWord& word, std::size_t& at) {
  const auto path = trace_strand(word, 1);
  const auto& ev = path.crossing_events;
  for (std::size_t k = 0; k + 1 < ev.size(); ++k) {
    if (ev[k].other_strand != ev[k + 1].other_strand) continue;
    if (ev[k].sign == ev[k + 1].sign) continue;
    const int g = std::abs(word.letters[ev[k].position]);
    if (std::abs(word.letters[ev[k + 1].position]) != g) continue;
    bool commutes = true;
    for (std::size_t i = ev[k].position + 1; i < ev[k + 1].position; ++i) {
      if (std::abs(std::abs(word.letters[i]) - g) < 2) {
        commutes = false;
        break;
      }
    }
    if (!commutes) continue;
    word.letters.erase(word.letters.begin() +
                       static_cast<std::ptrdiff_t>(ev[k + 1].position));
    word.letters.erase(word.letters.begin() +
                       static_cast<std::ptrdiff_t>(ev[k].position));
    at = ev[k].position;
    return true;
  }
  return false;
}

}  // namespace

FreeingResult free_leftmost_strand(const PlatDiagram& plat,
                                   std::optional<std::size_t> max_steps) {
  if (permutation_of(plat.word)[0] != 1) {
    throw InvalidBraid(
        "string 1 must end at bottom position 1; route it home first");
  }
  const std::size_t limit = max_steps.value_or(default_max_steps(plat));
  FreeingResult result{plat, {}};
  BraidWord& word = result.plat.word;
  std::size_t used = 0;
  while (used < limit && !leftmost_is_free(result.plat)) {
    std::size_t at = 0;
    if (try_free_cancel(word.letters, at)) {
      result.steps.push_back({RewriteRule::FreeCancel, at, word.size()});
    } else if (try_strand_bigon(word, at)) {
      result.steps.push_back({RewriteRule::StrandBigon, at, word.size()});
    } else {
      break;
    }
    ++used;
  }
  if (leftmost_is_free(result.plat)) return result;

  // Search from the top; failing that, turn the plat upside down (reverse
  // the word) and search from the other end.
  const std::size_t budget = limit > used ? limit - used : 0;
  auto delta = untangle_caps(word, budget / 2 + budget % 2);
  bool flipped = false;
  if (!delta) {
    BraidWord rev(word.width, {word.letters.rbegin(), word.letters.rend()});
    delta = untangle_caps(rev, budget / 2);
    flipped = true;
  }
  if (!delta) {
    throw StepLimitExceeded("string 1 still crossed after " +
                            std::to_string(limit) + " steps");
  }
  auto freed = free_inverse(*delta);
  if (flipped) std::reverse(freed.begin(), freed.end());
  word.letters = std::move(freed);
  result.steps.push_back({RewriteRule::CapTransfer, 0, word.size()});
  return result;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

int parse_int(std::string_view text, std::size_t column,
              std::string_view what) {
  auto tok = trim(text);
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("column " + std::to_string(column) + ": bad " +
                     std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

PlatDiagram parse_plat(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) {
    throw ParseError("column 1: expected 'n=<int>; word=<ints>'");
  }
  auto head = trim(text.substr(0, semi));
  if (head.substr(0, 2) != "n=") {
    throw ParseError("column 1: expected 'n='");
  }
  const int n = parse_int(head.substr(2), 3, "bridge count");
  if (n < 1) throw ParseError("column 3: n must be positive");

  auto tail = trim(text.substr(semi + 1));
  const std::size_t word_at = text.find("word=", semi);
  if (tail.substr(0, 5) != "word=" || word_at == std::string_view::npos) {
    throw ParseError("column " + std::to_string(semi + 2) +
                     ": expected 'word='");
  }
  const std::size_t word_col = word_at + 6;
  std::vector<int> letters;
  auto body = tail.substr(5);
  std::size_t offset = 0;
  if (!trim(body).empty()) {
    while (true) {
      const auto comma = body.find(',', offset);
      const auto tok = body.substr(offset, comma == std::string_view::npos
                                               ? std::string_view::npos
                                               : comma - offset);
      const std::size_t tok_col = word_col + offset;
      const int g = parse_int(tok, tok_col, "generator");
      if (g == 0 || std::abs(g) > 2 * n - 1) {
        throw ParseError("column " + std::to_string(tok_col) + ": generator " +
                         std::to_string(g) + " (letter " +
                         std::to_string(letters.size() + 1) +
                         ") outside [1, " + std::to_string(2 * n - 1) + "]");
      }
      letters.push_back(g);
      if (comma == std::string_view::npos) break;
      offset = comma + 1;
    }
  }
  return PlatDiagram(n, std::move(letters));
}

std::string format_plat(const PlatDiagram& plat) {
  std::ostringstream os;
  os << "n=" << plat.n << "; word=";
  for (std::size_t i = 0; i < plat.word.letters.size(); ++i) {
    if (i) os << ',';
    os << plat.word.letters[i];
  }
  return os.str();
}

PlatDiagram read_plat_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("IoError", "cannot open plat file " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    try {
      return parse_plat(t);
    } catch (const ParseError& e) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  throw ParseError(path + ": no plat line found");
}

}  // namespace sbridge::braid
