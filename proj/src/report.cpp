#include "mri/report.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mri {

using Json = nlohmann::ordered_json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

std::string curves_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "problem,classifier,strategy,replicate,step,labels,loss\n";
  for (const auto& cell : result.cells) {
    for (std::size_t i = 0; i < cell.curve.size(); ++i) {
      out << cell.problem << ',' << cell.classifier << ',' << cell.strategy << ',' << cell.replicate << ','
          << i << ',' << cell.curve.labels[i] << ',' << format_double(cell.curve.loss[i]) << '\n';
    }
  }
  return out.str();
}

std::string metrics_csv(const ExperimentSummary& summary) {
  std::ostringstream out;
  out << "problem,group,classifier,strategy,scope,replicate,replicates,aua,wi_linear,wi_exponential,"
         "label_complexity\n";
  for (const auto& r : summary.metrics) {
    out << r.problem << ',' << r.group << ',' << r.classifier << ',' << r.strategy << ',' << to_string(r.scope)
        << ',' << (r.scope == MetricScope::Replicate ? std::to_string(r.replicate) : "") << ','
        << r.replicates << ',' << format_double(r.aua) << ',' << format_double(r.wi_linear) << ','
        << format_double(r.wi_exponential) << ',' << format_double(r.label_complexity) << '\n';
  }
  return out.str();
}

namespace {

Json by_strategy(const RankTable& t, const std::vector<double>& v) {
  Json j = Json::object();
  for (std::size_t s = 0; s < t.strategies.size(); ++s) j[t.strategies[s]] = v[s];
  return j;
}

Json table_json(const RankTable& t) {
  Json j;
  j["criteria"] = t.criteria;
  if (!t.values.empty()) {
    Json values = Json::object();
    for (std::size_t c = 0; c < t.criteria.size(); ++c) values[t.criteria[c]] = by_strategy(t, t.values[c]);
    j["values"] = values;
  }
  Json ranks = Json::object();
  for (std::size_t c = 0; c < t.criteria.size(); ++c) ranks[t.criteria[c]] = by_strategy(t, t.ranks[c]);
  j["ranks"] = ranks;
  j["mean_rank"] = by_strategy(t, t.mean_rank);
  j["rank_variance"] = by_strategy(t, t.rank_variance);
  Json overall = Json::object();
  for (std::size_t s = 0; s < t.strategies.size(); ++s) overall[t.strategies[s]] = t.overall[s];
  j["overall"] = overall;
  return j;
}

}  // namespace

std::string ranks_json(const ExperimentSummary& summary) {
  Json root;
  root["metrics"] = kMetricNames;
  if (!summary.ranking) {
    root["strategies"] = Json::array();
    root["r1"] = Json::array();
    root["r2"] = Json::array();
    root["r3"] = Json::array();
    root["r4"] = nullptr;
    root["r5"] = nullptr;
    return root.dump(2) + "\n";
  }
  const AggregateRanking& a = *summary.ranking;
  root["strategies"] = a.r4.strategies;
  Json r1 = Json::array();
  for (const auto& p : a.r1) {
    Json j;
    j["problem"] = p.problem;
    j["group"] = p.group;
    j["classifier"] = p.classifier;
    j["table"] = table_json(p.table);
    r1.push_back(j);
  }
  root["r1"] = r1;
  Json r2 = Json::array();
  for (const auto& g : a.r2) {
    Json j;
    j["group"] = g.group;
    j["classifier"] = g.classifier;
    j["table"] = table_json(g.table);
    r2.push_back(j);
  }
  root["r2"] = r2;
  Json r3 = Json::array();
  for (const auto& c : a.r3) {
    Json j;
    j["classifier"] = c.classifier;
    j["table"] = table_json(c.table);
    r3.push_back(j);
  }
  root["r3"] = r3;
  root["r4"] = table_json(a.r4);
  Json r5;
  r5["baseline"] = a.r5.baseline;
  r5["pairings"] = a.r5.pairings;
  Json per = Json::object();
  for (std::size_t c = 0; c < a.r5.classifiers.size(); ++c) {
    Json counts = Json::object();
    for (std::size_t s = 0; s < a.r5.strategies.size(); ++s) counts[a.r5.strategies[s]] = a.r5.per_classifier[c][s];
    per[a.r5.classifiers[c]] = counts;
  }
  r5["per_classifier"] = per;
  Json total = Json::object();
  for (std::size_t s = 0; s < a.r5.strategies.size(); ++s) total[a.r5.strategies[s]] = a.r5.total[s];
  r5["total"] = total;
  root["r5"] = r5;
  return root.dump(2) + "\n";
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

void write_report(const std::filesystem::path& dir, const ExperimentResult& result,
                  const ExperimentSummary& summary) {
  std::filesystem::create_directories(dir);
  write_file(dir / "curves.csv", curves_csv(result));
  write_file(dir / "metrics.csv", metrics_csv(summary));
  write_file(dir / "ranks.json", ranks_json(summary));
  const auto diag = dir / "diagnostics.txt";
  if (summary.diagnostics.empty()) {
    std::filesystem::remove(diag);
  } else {
    std::string text;
    for (const auto& d : summary.diagnostics) text += d + "\n";
    write_file(diag, text);
  }
}

}  // namespace mri
