#include "tel/words.hpp"

#include <algorithm>
#include <sstream>

namespace tel {

namespace {

void check_letter(const Letter& l, const Alphabet& sigma, const char* where) {
  if (sigma.mode() == AtomMode::Letters && l.size() != 1) {
    throw Error(ErrorKind::ModeMismatch,
                std::string(where) + ": letters-mode position must hold exactly one symbol");
  }
  for (const auto& s : l) {
    if (!sigma.contains(s)) {
      throw Error(ErrorKind::UnknownSymbol,
                  std::string(where) + ": symbol '" + s + "' not in alphabet");
    }
  }
}

}  // namespace

LassoWord::LassoWord(std::vector<Letter> prefix, std::vector<Letter> loop,
                     Alphabet alphabet)
    : prefix_(std::move(prefix)), loop_(std::move(loop)), alphabet_(std::move(alphabet)) {
  if (loop_.empty()) throw Error(ErrorKind::EmptyWord, "loop must be non-empty");
  for (const auto& l : prefix_) check_letter(l, alphabet_, "prefix");
  for (const auto& l : loop_) check_letter(l, alphabet_, "loop");
}

const Letter& LassoWord::letter_at(long long i) const {
  if (i < 1) throw Error(ErrorKind::BadIndex, "positions start at 1");
  long long ell = prefix_size();
  if (i <= ell) return prefix_[static_cast<std::size_t>(i - 1)];
  return loop_[static_cast<std::size_t>((i - ell - 1) % loop_size())];
}

long long LassoWord::canonical_position(long long i) const {
  if (i < 1) throw Error(ErrorKind::BadIndex, "positions start at 1");
  long long ell = prefix_size();
  long long p = loop_size();
  if (i <= ell + p) return i;
  return ell + 1 + ((i - ell - 1) % p);
}

LassoWord from_finite(const FiniteTrace& trace) {
  if (trace.positions.empty()) {
    throw Error(ErrorKind::EmptyWord, "finite trace must be non-empty");
  }
  if (trace.alphabet.mode() != AtomMode::Props) {
    throw Error(ErrorKind::ModeMismatch, "finite traces require props mode");
  }
  return LassoWord(trace.positions, {Letter{}}, trace.alphabet);
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Letter parse_letter(const std::string& raw, AtomMode mode) {
  std::string s = trim(raw);
  if (mode == AtomMode::Letters) {
    if (s.empty()) throw Error(ErrorKind::SyntaxError, "empty position in word literal");
    return Letter{s};
  }
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') {
    throw Error(ErrorKind::SyntaxError,
                "props-mode position must look like '{p,q}', got '" + s + "'");
  }
  Letter out;
  std::string inner = trim(s.substr(1, s.size() - 2));
  if (inner.empty()) return out;
  for (const auto& part : split(inner, ',')) {
    std::string sym = trim(part);
    if (sym.empty()) throw Error(ErrorKind::SyntaxError, "empty symbol in '" + s + "'");
    out.insert(sym);
  }
  return out;
}

std::vector<Letter> parse_side(const std::string& raw, AtomMode mode, bool allow_empty) {
  std::string s = trim(raw);
  if (s.empty()) {
    if (allow_empty) return {};
    throw Error(ErrorKind::EmptyWord, "loop part of word literal is empty");
  }
  std::vector<Letter> out;
  for (const auto& part : split(s, ';')) out.push_back(parse_letter(part, mode));
  return out;
}

}  // namespace

LassoWord parse_word(const std::string& text, const Alphabet& alphabet) {
  auto parts = split(text, '|');
  if (parts.size() != 2) {
    throw Error(ErrorKind::SyntaxError, "word literal must contain exactly one '|'");
  }
  std::vector<Letter> prefix = parse_side(parts[0], alphabet.mode(), true);
  std::vector<Letter> loop = parse_side(parts[1], alphabet.mode(), false);
  return LassoWord(std::move(prefix), std::move(loop), alphabet);
}

LassoWord parse_word(const std::string& text, AtomMode mode) {
  auto parts = split(text, '|');
  if (parts.size() != 2) {
    throw Error(ErrorKind::SyntaxError, "word literal must contain exactly one '|'");
  }
  std::vector<Letter> prefix = parse_side(parts[0], mode, true);
  std::vector<Letter> loop = parse_side(parts[1], mode, false);
  std::set<std::string> seen;
  for (const auto& l : prefix) seen.insert(l.begin(), l.end());
  for (const auto& l : loop) seen.insert(l.begin(), l.end());
  if (seen.empty()) seen.insert("p");  // props-mode word of empty sets
  Alphabet sigma(std::vector<std::string>(seen.begin(), seen.end()), mode);
  return LassoWord(std::move(prefix), std::move(loop), sigma);
}

std::string print_word(const LassoWord& w) {
  auto print_letter = [&](const Letter& l) -> std::string {
    if (w.alphabet().mode() == AtomMode::Letters) return *l.begin();
    std::string out = "{";
    bool first = true;
    for (const auto& s : l) {
      if (!first) out += ",";
      out += s;
      first = false;
    }
    return out + "}";
  };
  std::ostringstream os;
  for (std::size_t i = 0; i < w.prefix().size(); ++i) {
    if (i) os << ";";
    os << print_letter(w.prefix()[i]);
  }
  os << " | ";
  for (std::size_t i = 0; i < w.loop().size(); ++i) {
    if (i) os << ";";
    os << print_letter(w.loop()[i]);
  }
  return os.str();
}

}  // namespace tel
