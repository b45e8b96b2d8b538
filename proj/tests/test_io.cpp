#include "sparseres/families.hpp"
#include "sparseres/io.hpp"

#include <gtest/gtest.h>

using namespace sparseres;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kInvariant;  // no error raised; tests expect kInvalidInput
}

}  // namespace

TEST(FamilyJson, RoundTrip) {
  for (const auto& f : {four_term_family(), trinomial_family(), sylvester_family(2, 3)}) {
    const SupportFamily g = family_from_json(family_to_json(f));
    EXPECT_EQ(g.dim(), f.dim());
    EXPECT_EQ(g.name(), f.name());
    for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(g[i].points(), f[i].points());
  }
}

TEST(FamilyJson, ParsesMinimalFile) {
  const Json j = Json::parse(R"({"dim": 1, "supports": [[[0], [2], [1]], [[0], [1]]]})");
  const SupportFamily f = family_from_json(j, "fallback");
  EXPECT_EQ(f.name(), "fallback");
  EXPECT_EQ(f[0].size(), 3u);
}

TEST(FamilyJson, ValidationErrors) {
  const std::vector<std::string> bad = {
      R"([1, 2])",
      R"({"supports": [[[0]], [[1]]]})",
      R"({"dim": 0, "supports": []})",
      R"({"dim": 1.5, "supports": [[[0]], [[1]]]})",
      R"({"dim": 1, "supports": [[[0]]]})",
      R"({"dim": 1, "supports": [[[0], [0]], [[1]]]})",
      R"({"dim": 2, "supports": [[[0]], [[1, 1]], [[0, 1]]]})",
      R"({"dim": 1, "supports": [[[0.5]], [[1]]]})",
      R"({"dim": 1, "supports": [[], [[1]]]})",
      R"({"dim": 1, "supports": [[[0]], [[1]]], "extra": 1})",
      R"({"dim": 1, "supports": [[[0]], [[1]]], "name": 3})",
      R"({"dim": 1, "supports": [[[99999999999]], [[1]]]})",
  };
  for (const auto& text : bad)
    EXPECT_EQ(kind_of([&] { (void)family_from_json(Json::parse(text)); }), ErrorKind::kInvalidInput) << text;
}

TEST(FamilyJson, MissingFile) {
  EXPECT_EQ(kind_of([] { (void)load_family("/nonexistent/family.json"); }), ErrorKind::kInvalidInput);
}

TEST(IntegerJson, StringsAbove2To53) {
  const Integer limit = Integer(1) << 53;
  EXPECT_TRUE(integer_json(limit).is_number_integer());
  EXPECT_TRUE(integer_json(-limit).is_number_integer());
  EXPECT_TRUE(integer_json(limit + 1).is_string());
  EXPECT_EQ(integer_from_json(integer_json(limit + 1)), limit + 1);
  EXPECT_EQ(integer_from_json(Json(-17)), -17);
  EXPECT_THROW(integer_from_json(Json("12a")), Error);
  EXPECT_THROW(integer_from_json(Json("-")), Error);
}

TEST(PolyJson, RoundTripsResultant) {
  const auto cert = compute_resultant(trinomial_family(), 1);
  const Json j = poly_to_json(cert.polynomial, cert.vars);
  EXPECT_EQ(j.size(), cert.polynomial.size());
  EXPECT_EQ(poly_from_json(j, cert.vars), cert.polynomial);
  // Terms carry (group, point, exponent) triples and a string coefficient.
  const Json& first = j.front();
  EXPECT_TRUE(first["coefficient"].is_string());
  EXPECT_EQ(first["monomial"].front().size(), 3u);
}

TEST(ReportJson, FieldsAndBigIntegers) {
  BoundsReport r = basic_report(four_term_family());
  add_resultant(r, compute_resultant(four_term_family(), 1));
  const Json j = report_to_json(r);
  EXPECT_EQ(j["E"], 4194304);
  EXPECT_EQ(j["H"], 8);
  EXPECT_EQ(j["q_display"], "7.33");
  EXPECT_EQ(j["matrix_bound"]["exponent"], 41);
  EXPECT_EQ(j["matrix_bound"]["value"], "4835703278458516698824704");
  EXPECT_TRUE(j["height_bound"].get<bool>());

  const Json big = report_to_json(basic_report(sylvester_family(20, 20)));
  EXPECT_TRUE(big["E"].is_string());
  EXPECT_EQ(big["E"], ipow(Integer(21), 40).str());
}

TEST(ReportJson, UndefinedQuotient) {
  BoundsReport r = basic_report(sylvester_family(1, 1));
  add_resultant(r, sylvester_resultant(1, 1));
  const Json j = report_to_json(r);
  EXPECT_TRUE(j["q"].is_null());
}

TEST(SubdivisionJson, VolumesAddUp) {
  const auto s = build_validated_subdivision(four_term_family().supports(), 1);
  const Json j = subdivision_to_json(s);
  Rational total = 0;
  for (const auto& c : j["cells"]) {
    total += Rational(c["volume"].get<std::string>());
    EXPECT_EQ(c["faces"].size(), 3u);
  }
  EXPECT_EQ(total, Rational(j["total_volume"].get<std::string>()));
}
