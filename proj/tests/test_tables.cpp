#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epatlas/tables.hpp"

using namespace epatlas;

namespace {

const CatalogueRow& find_row(const std::vector<CatalogueRow>& rows,
                             const std::string& label) {
  for (const auto& r : rows)
    if (r.label == label) return r;
  throw std::runtime_error("no catalogue row labelled " + label);
}

}  // namespace

TEST_CASE("catalogue sizes") {
  CHECK(two_band_combined_catalogue().size() == 11);
  CHECK(!two_band_catalogue().empty());
  CHECK(!three_band_catalogue().empty());
  CHECK(!four_band_catalogue().empty());
  CHECK(full_catalogue().size() ==
        two_band_catalogue().size() + two_band_combined_catalogue().size() +
            three_band_catalogue().size() + four_band_catalogue().size());
}

TEST_CASE("signature parameter counts") {
  CHECK(find_row(two_band_catalogue(), "psH").parameter_count == 3);
  CHECK(find_row(three_band_catalogue(), "psCS").parameter_count == 6);
  CHECK(find_row(four_band_catalogue(), "CS").parameter_count == 26);
}

TEST_CASE("every catalogue row verifies") {
  for (const CatalogueRow& row : full_catalogue()) {
    CAPTURE(row.label);
    CAPTURE(row.n);
    RowCheck check = check_row(row);
    CAPTURE(check.expected_parameters);
    CAPTURE(check.measured_labels);
    CAPTURE(check.expected_constraints);
    CAPTURE(check.predicted_constraint_count);
    CHECK(check.count_ok);
    CHECK(check.labels_ok);
    CHECK(check.constraints_ok);
    // Alternating projection converges only for involutive actions; the
    // catalogue also carries deliberately non-involutive generators.
    bool involutive = true;
    for (const auto& op : row.ops)
      involutive = involutive && validate_operator(op).involution < 1e-12;
    if (involutive) CHECK(check.symmetrization_residual < 1e-10);
  }
}
