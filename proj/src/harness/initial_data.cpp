#include "lenssplit/harness/initial_data.hpp"

#include <cctype>
#include <cmath>

#include "lenssplit/harness/config.hpp"

namespace lenssplit::harness {

cplx InitialTerm::operator()(double x) const {
  switch (kind) {
    case Kind::Gauss: {
      const double d = x - center;
      return amplitude * std::exp(-0.5 * cplx(alpha, -beta) * d * d);
    }
    case Kind::SechX2: return amplitude / std::cosh(0.5 * x * x);
    case Kind::SechX2Sin: return amplitude * std::sin(x) / std::cosh(0.5 * x * x);
  }
  return 0.0;
}

cplx InitialData::operator()(double x) const {
  cplx sum = 0.0;
  for (const auto& term : terms) sum += term(x);
  return sum;
}

std::optional<GaussianState> InitialData::gaussian() const {
  if (terms.size() != 1) return std::nullopt;
  const auto& g = terms.front();
  if (g.kind != InitialTerm::Kind::Gauss || g.center != 0.0) return std::nullopt;
  return gaussian_initial_state(g.amplitude, g.alpha, g.beta);
}

namespace {

class TermParser {
 public:
  TermParser(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  InitialData parse() {
    InitialData data;
    skip_space();
    if (pos_ == text_.size()) fail("empty initial data");
    while (true) {
      data.terms.push_back(term());
      skip_space();
      if (pos_ == text_.size()) break;
      if (text_[pos_] != '+') fail("expected '+' between terms");
      ++pos_;
    }
    return data;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("initial data: " + what + " at column " + std::to_string(pos_ + 1), line_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  InitialTerm term() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '(') fail("expected '(' after '" + name + "'");
    ++pos_;
    std::vector<double> args;
    while (true) {
      skip_space();
      const std::size_t a = pos_;
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')') ++pos_;
      if (pos_ >= text_.size()) fail("unterminated argument list");
      args.push_back(parse_number(text_.substr(a, pos_ - a), line_));
      if (text_[pos_++] == ')') break;
    }
    InitialTerm t;
    t.amplitude = args[0];
    if (name == "gauss") {
      if (args.size() < 2 || args.size() > 4) fail("gauss takes 2 to 4 arguments");
      t.kind = InitialTerm::Kind::Gauss;
      t.alpha = args[1];
      if (!(t.alpha > 0.0)) fail("gauss needs alpha > 0");
      if (args.size() > 2) t.center = args[2];
      if (args.size() > 3) t.beta = args[3];
    } else if (name == "sechx2" || name == "sechx2sin") {
      if (args.size() != 1) fail(name + " takes 1 argument");
      t.kind = name == "sechx2" ? InitialTerm::Kind::SechX2 : InitialTerm::Kind::SechX2Sin;
    } else {
      fail("unknown term '" + name + "'");
    }
    return t;
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

InitialData InitialData::parse(std::string_view text, std::size_t line) { return TermParser(text, line).parse(); }

}  // namespace lenssplit::harness
