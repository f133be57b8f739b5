#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "gstf/catalog.hpp"
#include "gstf/parser.hpp"
#include "parser_corpus.hpp"

using namespace gstf;
using FS = FunctionSpec;

TEST_CASE("tokenize") {
  const auto t = tokenize("hermite(3)*gaussian(2) + 0.5");
  using K = ExprToken::Kind;
  const std::vector<K> kinds = {K::Identifier, K::LParen, K::Number, K::RParen, K::Star, K::Identifier,
                                K::LParen,     K::Number, K::RParen, K::Plus,   K::Number, K::End};
  REQUIRE(t.size() == kinds.size());
  for (std::size_t i = 0; i < kinds.size(); ++i) CHECK(t[i].kind == kinds[i]);
  CHECK(t[0].text == "hermite");
  CHECK(t[0].offset == 0);
  CHECK(t[5].offset == 11);
  CHECK(t[10].number == 0.5);
  CHECK(t[11].offset == 28);

  // '-' is a sign only where an operand is expected.
  const auto a = tokenize("1-2");
  CHECK(a.size() == 4);
  CHECK(a[1].kind == K::Minus);
  const auto b = tokenize("(-2)");
  CHECK(b[1].kind == K::Number);
  CHECK(b[1].number == -2.0);
}

TEST_CASE("valid corpus parses to the expected trees") {
  const auto cases = corpus::valid();
  CHECK(cases.size() >= 30);
  for (const auto& c : cases) {
    CAPTURE(c.text);
    const FS got = parse_function_expr(c.text);
    CHECK(got == c.expected);
    CHECK(parse_function_expr(pretty_print(got)) == got);
  }
}

TEST_CASE("invalid corpus reports kind and offset") {
  const auto cases = corpus::invalid();
  CHECK(cases.size() >= 15);
  for (const auto& c : cases) {
    CAPTURE(c.text);
    try {
      parse_function_expr(c.text);
      FAIL("parsed");
    } catch (const Error& e) {
      CHECK(e.kind() == c.kind);
      CHECK(e.offset() == c.offset);
    }
  }
}

TEST_CASE("length limits") {
  CHECK_THROWS_WITH_AS(parse_function_expr(""), doctest::Contains("empty"), Error);
  CHECK_THROWS_AS(parse_function_expr("   "), Error);
  std::string long_expr = "gaussian(1)";
  while (long_expr.size() <= kMaxExprLength) long_expr += " + gaussian(1)";
  try {
    parse_function_expr(long_expr);
    FAIL("parsed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
  std::string at_limit(kMaxExprLength - 4, ' ');
  at_limit += "0.25";
  CHECK(parse_function_expr(at_limit) == FS::constant(0.25));
}

TEST_CASE("round trip on random trees") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> pick(0, 10);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<int> order(0, 6);
  auto positive = [&] { return 0.1 + std::abs(u(rng)); };
  std::function<FS(int)> gen = [&](int depth) -> FS {
    const int k = depth >= 3 ? pick(rng) % 6 : pick(rng);
    switch (k) {
      case 0: return FS::gaussian(positive());
      case 1: return FS::hermite(order(rng));
      case 2: return order(rng) % 2 ? FS::bump() : FS::bump(1 + order(rng));
      case 3: return FS::subexp(positive(), positive());
      case 4: return FS::poly(order(rng));
      case 5: return FS::constant(u(rng));
      case 6: return FS::translate(gen(depth + 1), u(rng));
      case 7: return FS::modulate(gen(depth + 1), u(rng));
      case 8: return FS::sum(gen(depth + 1), gen(depth + 1));
      case 9: return FS::difference(gen(depth + 1), gen(depth + 1));
      default: return FS::product(gen(depth + 1), gen(depth + 1));
    }
  };
  for (int i = 0; i < 2000; ++i) {
    const FS spec = gen(0);
    const std::string text = pretty_print(spec);
    CAPTURE(text);
    CHECK(parse_function_expr(text) == spec);
  }
}
