#include "support.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <sstream>

using namespace eivarx;
using namespace eivarx::testing;

namespace {

McConfig small_config() {
    McConfig c;
    c.scenario.name = "example1";
    c.scenario.model = example1_model();
    c.scenario.noise = {0.2, 0.1};
    c.scenario.n = 1023;
    c.replications = 6;
    c.base_seed = 500;
    c.methods = {Method::Proposed, Method::OlsArx};
    c.threads = 1;
    return c;
}

}  // namespace

TEST(MonteCarlo, FixedSeedHasZeroSpread) {
    McConfig c = small_config();
    c.fixed_seed = true;
    c.replications = 3;
    const McSummary s = run_mc(c);
    for (const auto& p : s.parameters) EXPECT_EQ(p.two_sigma, 0.0) << p.method << " " << p.parameter;
}

TEST(MonteCarlo, ThreadCountDoesNotChangeResults) {
    McConfig one = small_config();
    McConfig three = small_config();
    three.threads = 3;
    const McSummary a = run_mc(one);
    const McSummary b = run_mc(three);
    ASSERT_EQ(a.parameters.size(), b.parameters.size());
    for (std::size_t i = 0; i < a.parameters.size(); ++i) {
        EXPECT_EQ(a.parameters[i].mean, b.parameters[i].mean);
        EXPECT_EQ(a.parameters[i].two_sigma, b.parameters[i].two_sigma);
    }
    EXPECT_EQ(a.eta_hats, b.eta_hats);
    EXPECT_EQ(a.order_recovery_rate, b.order_recovery_rate);
}

TEST(MonteCarlo, SummaryContents) {
    const McSummary s = run_mc(small_config());
    EXPECT_EQ(s.replications, 6);
    EXPECT_EQ(s.eta_hats.size(), 6u);
    ASSERT_NE(s.find("proposed", "a1"), nullptr);
    EXPECT_EQ(s.find("proposed", "a1")->true_value, -1.5);
    EXPECT_NE(s.find("ols_arx", "b1"), nullptr);
    EXPECT_EQ(s.find("ols_arx", "sigma2_eu"), nullptr);
    EXPECT_EQ(s.find("nope", "a1"), nullptr);
    EXPECT_EQ(parameter_names(2, true),
              (std::vector<std::string>{"sigma2_ey", "sigma2_eu", "a1", "a2", "b0", "b1", "b2"}));
}

TEST(MonteCarlo, SingleReplicateHasUndefinedSpread) {
    McConfig c = small_config();
    c.replications = 1;
    const McSummary s = run_mc(c);
    for (const auto& p : s.parameters) EXPECT_TRUE(std::isnan(p.two_sigma));
    std::ostringstream os;
    write_mc_csv(os, s);
    EXPECT_NE(os.str().find(",\n"), std::string::npos);
    const auto j = nlohmann::json::parse(mc_summary_to_json(s));
    EXPECT_TRUE(j["parameters"][0]["two_sigma"].is_null());
}

TEST(MonteCarlo, CsvAndJsonMirror) {
    const McSummary s = run_mc(small_config());
    std::ostringstream os;
    write_mc_csv(os, s);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "method,parameter,true,mean,two_sigma");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    EXPECT_EQ(rows, static_cast<int>(s.parameters.size()));
    const auto j = nlohmann::json::parse(mc_summary_to_json(s));
    EXPECT_EQ(j["parameters"].size(), s.parameters.size());
    EXPECT_EQ(j["base_seed"].get<std::uint64_t>(), 500u);
}

TEST(MonteCarlo, MethodNames) {
    for (Method m : {Method::Proposed, Method::Dpca, Method::DipcaDiag, Method::OlsArx})
        EXPECT_EQ(parse_method(method_name(m)), m);
    EXPECT_THROW(parse_method("pca"), InvalidArgument);
}

TEST(Io, CsvRoundTrip) {
    const TimeSeriesPair s = example1_data(64, 3);
    std::stringstream ss;
    write_series_csv(ss, s);
    const std::string text = ss.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "k,u,y,u_star,y_star");
    const TimeSeriesPair back = read_series_csv(ss);
    ASSERT_EQ(back.size(), s.size());
    EXPECT_LT((back.u - s.u).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((back.y - s.y).cwiseAbs().maxCoeff(), 1e-10);
    ASSERT_TRUE(back.u_star.has_value());
    EXPECT_EQ(*back.u_star, *s.u_star);
}

TEST(Io, CsvErrorsCarryLineNumbers) {
    std::istringstream missing("k,u\n0,1\n");
    EXPECT_THROW(read_series_csv(missing), IoError);
    std::istringstream bad("k,u,y\n0,1,2\n1,abc,3\n");
    try {
        read_series_csv(bad);
        FAIL() << "expected IoError";
    } catch (const IoError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
    EXPECT_THROW(read_series_csv(std::string("/nonexistent/file.csv")), IoError);
}

TEST(Io, ReportJsonFields) {
    const IdentificationReport r = identify(example1_data(1023, 8), PipelineConfig{});
    const auto j = nlohmann::json::parse(report_to_json(r));
    for (const char* key : {"eta_hat", "d_hat", "delay_hat", "a", "b", "sigma2_ey", "sigma2_eu",
                            "eigenvalue_trail", "tests", "converged", "iterations"})
        EXPECT_TRUE(j.contains(key)) << key;
    for (const char* key : {"d_guess", "statistic", "dof", "critical", "reject"})
        EXPECT_TRUE(j["tests"][0].contains(key)) << key;
}
