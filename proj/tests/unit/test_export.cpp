#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "rho/errors.hpp"
#include "rho/export.hpp"

using namespace rho;

TEST(FormatDouble, RoundTripAndSpecials) {
  for (double v : {0.1, -2.5e-300, 1.0 / 3.0, 6.02214076e23, 0.0}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_double(INFINITY), "inf");
  EXPECT_EQ(format_double(-INFINITY), "-inf");
}

TEST(FormatFromString, Values) {
  EXPECT_EQ(format_from_string("csv"), Format::csv);
  EXPECT_EQ(format_from_string("json"), Format::json);
  EXPECT_THROW(format_from_string("xml"), ConfigError);
}

TEST(DensityJson, RoundTripEveryKind) {
  const std::vector<Density1D> ds = {
      Density1D::gaussian(0.5, 2),
      Density1D::cauchy(-1, 10),
      Density1D::laplace(0, 0.5),
      Density1D::uniform(-1, 2),
      Density1D::exponential(1.5, 0.25),
      Density1D::histogram({0, 1, 3}, {0.25, 0.375}),
      Density1D::exp_family({dens::BasisTerm::parse("x"), dens::BasisTerm::parse("x^2")}, {0.3, -1.0}, -2, 2),
      Density1D::pathological_gaussian(0.7),
      Density1D::tabulated({0, 1, 2}, {0.5, 0.5, 0.5}),
      Density1D::gaussian(0, 1).shifted(3.0),
  };
  for (const auto& d : ds) {
    const Json j = density_to_json(d);
    const Density1D back = density_from_json(Json::parse(j.dump()));
    EXPECT_TRUE(back == d) << j.dump();
  }
}

TEST(DensityJson, MalformedIsConfigError) {
  EXPECT_THROW(density_from_json(Json{{"kind", "nope"}, {"params", Json::object()}}), ConfigError);
  EXPECT_THROW(density_from_json(Json{{"kind", "gaussian"}, {"params", {{"mean", 0}}}}), ConfigError);
  EXPECT_THROW(density_from_json(Json{{"kind", "gaussian"}, {"params", {{"mean", 0}, {"sd", -1}}}}), ConfigError);
}

TEST(PredictorJson, RoundTrip) {
  const LinearPredictor g{{PredictorTerm::parse("1"), PredictorTerm::parse("w")}, {0.5, -2.0}};
  EXPECT_EQ(predictor_from_json(predictor_to_json(g)), g);
}

TEST(RiskReportJson, RoundTripWithNanAndEmpty) {
  RiskReport r;
  r.per_replicate = {{0, 0.125, "N(0,1)"}, {1, std::numeric_limits<double>::quiet_NaN(), "x"}};
  r.mean_h2 = 0.1;
  r.median_h2 = 0.2;
  r.stderr_h2 = 0.01;
  r.failed_replicates = {2};
  r.failure_messages = {"boom"};
  r.bound_reference = 0.3;
  const RiskReport back = risk_report_from_json(Json::parse(risk_report_to_json(r).dump()));
  EXPECT_EQ(back.mean_h2, r.mean_h2);
  EXPECT_EQ(back.failed_replicates, r.failed_replicates);
  EXPECT_EQ(back.bound_reference, r.bound_reference);
  ASSERT_EQ(back.per_replicate.size(), 2u);
  EXPECT_EQ(back.per_replicate[0].h2, 0.125);
  EXPECT_TRUE(std::isnan(back.per_replicate[1].h2));

  const RiskReport empty;
  EXPECT_EQ(risk_report_from_json(risk_report_to_json(empty)), empty);
}

TEST(RiskCsv, HeaderAndRows) {
  RiskReport r;
  std::ostringstream e;
  write_risk_csv(r, e);
  EXPECT_EQ(e.str(), "replicate,h2,estimate\n");
  r.per_replicate = {{3, 0.5, "N(0,1)"}};
  std::ostringstream os;
  export_risk_report(r, Format::csv, os);
  EXPECT_EQ(os.str().substr(0, 22), "replicate,h2,estimate\n");
  EXPECT_NE(os.str().find("3,0.5,"), std::string::npos);
}

TEST(MleCsv, Header) {
  MleReport m;
  m.per_replicate = {{0, true, 2.5, 0.1, 2.5, 0.0}};
  std::ostringstream os;
  write_mle_csv(m, os);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "replicate,event,sample_max,sample_mean,mle,rho_theta");
  std::istringstream lines(os.str());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  EXPECT_EQ(count, 2);
}

TEST(WriteOutput, FileAndFailure) {
  const auto p = std::filesystem::temp_directory_path() / "rho_export_test.txt";
  write_output(p.string(), "hello\n");
  std::ifstream in(p);
  std::string s;
  std::getline(in, s);
  EXPECT_EQ(s, "hello");
  std::filesystem::remove(p);
  EXPECT_THROW(write_output("/nonexistent_dir_xyz/out.txt", "x"), IoError);
}
