#include "tel/syntax.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace tel {

namespace {

enum class Tok {
  Ident, Number, At, Bang, LBracket, RBracket, Lt, Gt, Amp, Pipe, Arrow,
  LParen, RParen, Dot, Plus, Star, End,
};

struct Token {
  Tok kind;
  std::string text;
  long long number = 0;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { next(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    next();
    return t;
  }

 private:
  void next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    tok_.span.begin = pos_;
    if (pos_ >= text_.size()) {
      tok_.kind = Tok::End;
      tok_.span.end = pos_;
      return;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t b = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      tok_.kind = Tok::Ident;
      tok_.text = text_.substr(b, pos_ - b);
      tok_.span.end = pos_;
      if (tok_.text[0] == '_') {
        /* the '_' prefix is reserved for generated fresh variables */
        throw Error(ErrorKind::SyntaxError, tok_.span,
                    "identifiers may not start with '_'");
      }
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t b = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      tok_.kind = Tok::Number;
      tok_.text = text_.substr(b, pos_ - b);
      tok_.number = std::stoll(tok_.text);
      tok_.span.end = pos_;
      return;
    }
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      tok_.kind = Tok::Arrow;
      pos_ += 2;
      tok_.span.end = pos_;
      return;
    }
    switch (c) {
      case '@': tok_.kind = Tok::At; break;
      case '!': tok_.kind = Tok::Bang; break;
      case '[': tok_.kind = Tok::LBracket; break;
      case ']': tok_.kind = Tok::RBracket; break;
      case '<': tok_.kind = Tok::Lt; break;
      case '>': tok_.kind = Tok::Gt; break;
      case '&': tok_.kind = Tok::Amp; break;
      case '|': tok_.kind = Tok::Pipe; break;
      case '(': tok_.kind = Tok::LParen; break;
      case ')': tok_.kind = Tok::RParen; break;
      case '.': tok_.kind = Tok::Dot; break;
      case '+': tok_.kind = Tok::Plus; break;
      case '*': tok_.kind = Tok::Star; break;
      default:
        throw Error(ErrorKind::SyntaxError, SourceSpan{pos_, pos_ + 1},
                    std::string("unexpected character '") + c + "'");
    }
    ++pos_;
    tok_.span.end = pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token tok_;
};

class Parser {
 public:
  Parser(const std::string& text, const Alphabet& alphabet,
         const std::set<std::string>& declared_free)
      : lex_(text), alphabet_(alphabet), declared_free_(declared_free) {}

  FormulaPtr parse() {
    FormulaPtr f = parse_implies();
    expect(Tok::End, "end of input");
    return f;
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw Error(ErrorKind::SyntaxError, t.span, msg);
  }

  Token expect(Tok kind, const std::string& what) {
    if (lex_.peek().kind != kind) fail(lex_.peek(), "expected " + what);
    return lex_.take();
  }

  FormulaPtr parse_implies() {
    FormulaPtr lhs = parse_or();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      return implies(lhs, parse_implies());
    }
    return lhs;
  }

  FormulaPtr parse_or() {
    FormulaPtr f = parse_and();
    while (lex_.peek().kind == Tok::Pipe) {
      lex_.take();
      f = or_(f, parse_and());
    }
    return f;
  }

  FormulaPtr parse_and() {
    FormulaPtr f = parse_unary();
    while (lex_.peek().kind == Tok::Amp) {
      lex_.take();
      f = and_(f, parse_unary());
    }
    return f;
  }

  FormulaPtr parse_unary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Bang:
        lex_.take();
        return not_(parse_unary());
      case Tok::LBracket: {
        lex_.take();
        if (lex_.peek().kind == Tok::RBracket) {
          lex_.take();
          return box_inf(parse_unary());
        }
        TermPtr bound = parse_term();
        expect(Tok::RBracket, "']'");
        return box(bound, parse_unary());
      }
      case Tok::Lt: {
        lex_.take();
        if (lex_.peek().kind == Tok::Gt) {
          lex_.take();
          return diamond_inf(parse_unary());
        }
        TermPtr bound = parse_term();
        expect(Tok::Gt, "'>'");
        return diamond(bound, parse_unary());
      }
      case Tok::Ident:
        if (t.text == "exists" || t.text == "forall") {
          bool is_exists = t.text == "exists";
          lex_.take();
          Token var = expect(Tok::Ident, "variable name");
          if (var.text == "exists" || var.text == "forall") {
            fail(var, "'" + var.text + "' cannot be a variable name");
          }
          expect(Tok::Dot, "'.'");
          bound_.push_back(var.text);
          FormulaPtr body = parse_implies();  // body extends maximally right
          bound_.pop_back();
          return is_exists ? exists(var.text, body) : forall(var.text, body);
        }
        return parse_postfix();
      default:
        return parse_postfix();
    }
  }

  FormulaPtr parse_postfix() {
    FormulaPtr f = parse_primary();
    while (lex_.peek().kind == Tok::At) {
      lex_.take();
      f = shift(f, parse_term_atom());
    }
    return f;
  }

  FormulaPtr parse_primary() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::LParen) {
      lex_.take();
      FormulaPtr f = parse_implies();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind == Tok::Ident) {
      Token id = lex_.take();
      if (!alphabet_.contains(id.text)) {
        throw Error(ErrorKind::UnknownSymbol, id.span,
                    "unknown atom '" + id.text + "'");
      }
      return atom(id.text);
    }
    fail(t, "expected a formula");
  }

  bool is_bound(const std::string& name) const {
    for (const auto& b : bound_) {
      if (b == name) return true;
    }
    return declared_free_.count(name) != 0;
  }

  TermPtr parse_term() {
    TermPtr t = parse_term_atom();
    while (lex_.peek().kind == Tok::Plus) {
      lex_.take();
      t = term_sum(t, parse_term_atom());
    }
    return t;
  }

  TermPtr parse_term_atom() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Number) {
      Token n = lex_.take();
      if (n.number == 0) {
        throw Error(ErrorKind::ZeroConstant, n.span, "time constant 0 is not allowed");
      }
      if (lex_.peek().kind == Tok::Star) {
        lex_.take();
        return term_scaled(n.number, parse_term_atom());
      }
      return term_const(n.number);
    }
    if (t.kind == Tok::Ident) {
      Token id = lex_.take();
      if (!is_bound(id.text)) {
        throw Error(ErrorKind::UnknownSymbol, id.span,
                    "unknown variable '" + id.text + "'");
      }
      return term_var(id.text);
    }
    if (t.kind == Tok::LParen) {
      lex_.take();
      TermPtr inner = parse_term();
      expect(Tok::RParen, "')'");
      return inner;
    }
    fail(t, "expected a time term");
  }

  Lexer lex_;
  const Alphabet& alphabet_;
  const std::set<std::string>& declared_free_;
  std::vector<std::string> bound_;
};

/* Precedence levels for printing: quantifier 0, | 2, & 3, prefix ops 4,
 * @ 5, atom 6. '->' never prints; implication is stored as !a | b. */
int level(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Atom: return 6;
    case FKind::Shift: return 5;
    case FKind::Not:
    case FKind::Box:
    case FKind::Diamond: return 4;
    case FKind::And: return 3;
    case FKind::Or: return 2;
    case FKind::Exists:
    case FKind::Forall: return 0;
  }
  return 0;
}

std::string print_term_atom(const TermPtr& t) {
  if (t->kind == TermKind::Sum) return "(" + print_term(t) + ")";
  return print_term(t);
}

void render(const FormulaPtr& f, int min_level, std::string& out) {
  bool parens = level(f) < min_level;
  if (parens) out += "(";
  switch (f->kind) {
    case FKind::Atom:
      out += f->name;
      break;
    case FKind::Shift:
      render(f->lhs, 5, out);
      out += " @ ";
      out += print_term_atom(f->term);
      break;
    case FKind::Not:
      out += "!";
      render(f->lhs, 4, out);
      break;
    case FKind::Box:
      out += "[" + print_term(f->term) + "] ";
      render(f->lhs, 4, out);
      break;
    case FKind::Diamond:
      out += "<" + print_term(f->term) + "> ";
      render(f->lhs, 4, out);
      break;
    case FKind::And:
      render(f->lhs, 3, out);
      out += " & ";
      render(f->rhs, 4, out);
      break;
    case FKind::Or:
      render(f->lhs, 2, out);
      out += " | ";
      render(f->rhs, 3, out);
      break;
    case FKind::Exists:
    case FKind::Forall:
      out += f->kind == FKind::Exists ? "exists " : "forall ";
      out += f->name;
      out += " . ";
      render(f->lhs, 0, out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

FormulaPtr parse_formula(const std::string& text, const Alphabet& alphabet,
                         const std::set<std::string>& free_vars) {
  Parser p(text, alphabet, free_vars);
  return p.parse();
}

std::string print_formula(const FormulaPtr& f) {
  std::string out;
  render(f, 0, out);
  return out;
}

nlohmann::json term_to_json(const TermPtr& t) {
  nlohmann::json j;
  switch (t->kind) {
    case TermKind::Const:
      j["kind"] = "const";
      j["value"] = t->value;
      break;
    case TermKind::Var:
      j["kind"] = "var";
      j["name"] = t->name;
      break;
    case TermKind::Sum:
      j["kind"] = "sum";
      j["children"] = {term_to_json(t->lhs), term_to_json(t->rhs)};
      break;
  }
  return j;
}

nlohmann::json formula_to_json(const FormulaPtr& f) {
  nlohmann::json j;
  nlohmann::json children = nlohmann::json::array();
  if (f->lhs) children.push_back(formula_to_json(f->lhs));
  if (f->rhs) children.push_back(formula_to_json(f->rhs));
  switch (f->kind) {
    case FKind::Atom:
      j["kind"] = "atom";
      j["symbol"] = f->name;
      break;
    case FKind::Shift:
      j["kind"] = "shift";
      j["term"] = term_to_json(f->term);
      break;
    case FKind::Not: j["kind"] = "not"; break;
    case FKind::And: j["kind"] = "and"; break;
    case FKind::Or: j["kind"] = "or"; break;
    case FKind::Box:
      j["kind"] = "box";
      j["term"] = term_to_json(f->term);
      break;
    case FKind::Diamond:
      j["kind"] = "diamond";
      j["term"] = term_to_json(f->term);
      break;
    case FKind::Exists:
      j["kind"] = "exists";
      j["var"] = f->name;
      break;
    case FKind::Forall:
      j["kind"] = "forall";
      j["var"] = f->name;
      break;
  }
  if (!children.empty()) j["children"] = children;
  return j;
}

}  // namespace tel
