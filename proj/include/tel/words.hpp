#pragma once

#include <set>
#include <string>
#include <vector>

#include "tel/core.hpp"

namespace tel {

/* One position of a word. Letters mode: exactly one symbol. Props mode: any
 * subset of the alphabet, possibly empty. */
using Letter = std::set<std::string>;

/* Ultimately periodic word prefix . loop^omega, 1-indexed positions. */
class LassoWord {
 public:
  LassoWord(std::vector<Letter> prefix, std::vector<Letter> loop, Alphabet alphabet);

  const Letter& letter_at(long long i) const;
  /* Smallest position j <= prefix+loop length whose suffix equals the suffix
   * at i. */
  long long canonical_position(long long i) const;

  long long prefix_size() const { return static_cast<long long>(prefix_.size()); }
  long long loop_size() const { return static_cast<long long>(loop_.size()); }
  const std::vector<Letter>& prefix() const { return prefix_; }
  const std::vector<Letter>& loop() const { return loop_; }
  const Alphabet& alphabet() const { return alphabet_; }

 private:
  std::vector<Letter> prefix_;
  std::vector<Letter> loop_;
  Alphabet alphabet_;
};

struct FiniteTrace {
  std::vector<Letter> positions;  // non-empty
  Alphabet alphabet;              // Props mode
};

/* Embeds a finite trace as trace . (empty set)^omega. Props mode only. */
LassoWord from_finite(const FiniteTrace& trace);

/* Word literals: positions separated by ';', prefix and loop separated by '|'.
 * Letters mode: each position is one identifier. Props mode: '{p,q}' sets.
 *   a;a;b | c          {p};{p,q} | {}
 * The prefix may be empty ('| b'); the loop may not. */
LassoWord parse_word(const std::string& text, const Alphabet& alphabet);
/* Same, inferring the alphabet from the symbols that occur. */
LassoWord parse_word(const std::string& text, AtomMode mode);
std::string print_word(const LassoWord& w);

}  // namespace tel
