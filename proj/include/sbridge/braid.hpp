#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sbridge::braid {

// A word in the Artin generators of the braid group on `width` strings.
// Letter g > 0 is sigma_g (string at position g passes OVER string g+1 as
// they exchange places), g < 0 is its inverse. Letters read top to bottom.
struct BraidWord {
  int width = 2;
  std::vector<int> letters;

  BraidWord() = default;
  BraidWord(int w, std::vector<int> l);

  std::size_t size() const { return letters.size(); }
  bool operator==(const BraidWord&) const = default;
};

// Throws InvalidBraid on width < 2 or any |g| outside [1, width-1].
void validate(const BraidWord& word);

// A 2n-string braid closed by caps (1,2),(3,4),... at the top and cups with
// the same pairing at the bottom.
struct PlatDiagram {
  int n = 1;
  BraidWord word;

  PlatDiagram() = default;
  PlatDiagram(int n, std::vector<int> letters);

  bool operator==(const PlatDiagram&) const = default;
};

struct CrossingEvent {
  int other_strand = 0;  // identified by its top position
  int sign = 0;          // exponent sign of the letter
  std::size_t position = 0;  // index of the letter in the word
};

struct StrandPath {
  int strand_id = 0;
  std::vector<CrossingEvent> crossing_events;
};

// perm[i-1] is the bottom position reached by the string starting at top
// position i (1-based values).
std::vector<int> permutation_of(const BraidWord& word);

// Crossings met by the string that starts at top position `strand`.
StrandPath trace_strand(const BraidWord& word, int strand);

// Number of plat components (1 for a knot).
int component_count(const PlatDiagram& plat);

// Appends letters that bring the string starting at top position 1 back to
// bottom position 1 without changing the link: its cup is exchanged with the
// cup to its left until it is the first one (s_2k s_2k-1 s_2k+1 s_2k per
// step), then given a half twist (s_1) if needed.
PlatDiagram route_leftmost_home(const PlatDiagram& plat);

enum class RewriteRule { FreeCancel, StrandBigon, CapTransfer };

struct RewriteStep {
  RewriteRule rule;
  std::size_t position = 0;  // first letter touched (CapTransfer: 0)
  std::size_t length_after = 0;
};

struct FreeingResult {
  PlatDiagram plat;
  std::vector<RewriteStep> steps;
};

std::size_t default_max_steps(const PlatDiagram& plat);

// Rewrites the plat until the leftmost string takes part in no crossing.
// Requires permutation_of(plat.word) to fix position 1 (InvalidBraid
// otherwise). Local rules first, first applicable wins, scanning left to
// right:
//   FreeCancel   adjacent g, -g pair;
//   StrandBigon  two consecutive crossings of string 1 with the same string,
//                opposite exponents, separated only by letters commuting
//                with them.
// If string 1 is still crossed, one CapTransfer step replaces the whole word
// by a braid on strings 2..2n with the same plat (see untangle_caps); the
// search runs from the top, then from the bottom.
// Throws StepLimitExceeded when rewrites plus search expansions exceed
// `max_steps`.
FreeingResult free_leftmost_strand(const PlatDiagram& plat,
                                   std::optional<std::size_t> max_steps = {});

bool leftmost_is_free(const PlatDiagram& plat);

// `n=<int>; word=<comma separated signed ints>`; ParseError on bad input,
// with the column of the offending token.
PlatDiagram parse_plat(std::string_view text);
std::string format_plat(const PlatDiagram& plat);

// Reads the first non-empty, non-comment line of a file.
PlatDiagram read_plat_file(const std::string& path);

}  // namespace sbridge::braid
