// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include "srab/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>

#include <json.hpp>

#include "srab/error.hpp"

namespace srab {

namespace {

using Json = nlohmann::ordered_json;

Json psnr_json(double v) {
  if (std::isinf(v) && v > 0)
    return Json{{"psnr", nullptr}, {"identical", true}};
  return Json{{"psnr", v}, {"identical", false}};
}

double psnr_from(const Json &j) {
  if (j.at("identical").get<bool>())
    return std::numeric_limits<double>::infinity();
  return j.at("psnr").get<double>();
}

Json optional_psnr(const std::optional<double> &v) {
  return v ? psnr_json(*v) : Json(nullptr);
}

std::optional<double> optional_psnr_from(const Json &j, const char *key) {
  if (!j.contains(key) || j.at(key).is_null())
    return std::nullopt;
  return psnr_from(j.at(key));
}

std::string csv_value(double v) {
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  return format_double(v);
}

std::string csv_optional(const std::optional<double> &v) {
  return v ? csv_value(*v) : std::string();
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

} // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void summarize(EvalReport &report) {
  report.summary.clear();
  std::vector<std::pair<std::string, double>> keys;
  for (const ImageEntry &e : report.entries) {
    const std::pair<std::string, double> key{e.model, e.alpha};
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      keys.push_back(key);
  }
  for (const auto &[model, alpha] : keys) {
    SummaryRow row;
    row.model = model;
    row.alpha = alpha;
    double lr = 0.0, sr = 0.0, outer = 0.0, defended = 0.0;
    int n_outer = 0, n_defended = 0;
    for (const ImageEntry &e : report.entries) {
      if (e.model != model || e.alpha != alpha)
        continue;
      ++row.count;
      lr += e.lr_psnr;
      sr += e.sr_psnr;
      if (e.outer_psnr) {
        outer += *e.outer_psnr;
        ++n_outer;
      }
      if (e.defended_sr_psnr) {
        defended += *e.defended_sr_psnr;
        ++n_defended;
      }
    }
    row.mean_lr_psnr = lr / row.count;
    row.mean_sr_psnr = sr / row.count;
    if (n_outer > 0)
      row.mean_outer_psnr = outer / n_outer;
    if (n_defended > 0)
      row.mean_defended_sr_psnr = defended / n_defended;
    report.summary.push_back(row);
  }
}

std::optional<std::int64_t> timestamp_from_environment() {
  const char *epoch = std::getenv("SOURCE_DATE_EPOCH");
  if (!epoch || !*epoch)
    return std::nullopt;
  std::int64_t v = 0;
  const auto res = std::from_chars(epoch, epoch + std::strlen(epoch), v);
  if (res.ec != std::errc())
    return std::nullopt;
  return v;
}

std::string report_to_json(const EvalReport &r) {
  Json j;
  j["schema"] = r.schema;
  j["toolkit_version"] = r.toolkit_version;
  j["created"] = r.created ? Json(*r.created) : Json(nullptr);
  j["dataset"] = r.dataset;
  j["models"] = r.models;
  Json attack;
  attack["kind"] = r.attack.kind;
  attack["iterations"] = r.attack.iterations;
  attack["seed"] = r.attack.seed;
  attack["quantized"] = r.attack.quantized;
  attack["defense"] = r.attack.defense ? Json(*r.attack.defense) : Json(nullptr);
  j["attack"] = attack;
  Json entries = Json::array();
  for (const ImageEntry &e : r.entries) {
    Json je;
    je["image_id"] = e.image_id;
    je["model"] = e.model;
    je["alpha"] = e.alpha;
    je["lr_psnr"] = psnr_json(e.lr_psnr);
    je["sr_psnr"] = psnr_json(e.sr_psnr);
    je["outer_psnr"] = optional_psnr(e.outer_psnr);
    je["robustness_index"] =
        e.robustness_index ? Json(*e.robustness_index) : Json(nullptr);
    je["defended_sr_psnr"] = optional_psnr(e.defended_sr_psnr);
    entries.push_back(je);
  }
  j["entries"] = entries;
  Json summary = Json::array();
  for (const SummaryRow &s : r.summary) {
    Json js;
    js["model"] = s.model;
    js["alpha"] = s.alpha;
    js["count"] = s.count;
    js["mean_lr_psnr"] = psnr_json(s.mean_lr_psnr);
    js["mean_sr_psnr"] = psnr_json(s.mean_sr_psnr);
    js["mean_outer_psnr"] = optional_psnr(s.mean_outer_psnr);
    js["mean_defended_sr_psnr"] = optional_psnr(s.mean_defended_sr_psnr);
    summary.push_back(js);
  }
  j["summary"] = summary;
  if (r.transfer) {
    Json jt;
    jt["sources"] = r.transfer->sources;
    jt["targets"] = r.transfer->targets;
    Json rows = Json::array();
    for (const auto &row : r.transfer->mean_sr_psnr) {
      Json jr = Json::array();
      for (double v : row)
        jr.push_back(psnr_json(v));
      rows.push_back(jr);
    }
    jt["mean_sr_psnr"] = rows;
    j["transfer"] = jt;
  } else {
    j["transfer"] = nullptr;
  }
  if (r.spearman_requested) {
    j["spearman"] = r.spearman ? Json(*r.spearman) : Json(nullptr);
    j["spearman_defined"] = r.spearman.has_value();
  } else {
    j["spearman"] = nullptr;
    j["spearman_defined"] = nullptr;
  }
  return j.dump(2) + "\n";
}

EvalReport report_from_json(const std::string &text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error &e) {
    raise(ErrorKind::Data, std::string("report is not valid JSON: ") + e.what());
  }
  try {
    EvalReport r;
    r.schema = j.at("schema").get<std::string>();
    if (r.schema != kReportSchema)
      raise(ErrorKind::VersionMismatch, "report schema " + r.schema);
    r.toolkit_version = j.at("toolkit_version").get<std::string>();
    if (!j.at("created").is_null())
      r.created = j.at("created").get<std::int64_t>();
    r.dataset = j.at("dataset").get<std::string>();
    r.models = j.at("models").get<std::vector<std::string>>();
    const Json &a = j.at("attack");
    r.attack.kind = a.at("kind").get<std::string>();
    r.attack.iterations = a.at("iterations").get<int>();
    r.attack.seed = a.at("seed").get<std::uint64_t>();
    r.attack.quantized = a.at("quantized").get<bool>();
    if (!a.at("defense").is_null())
      r.attack.defense = a.at("defense").get<std::string>();
    for (const Json &je : j.at("entries")) {
      ImageEntry e;
      e.image_id = je.at("image_id").get<std::string>();
      e.model = je.at("model").get<std::string>();
      e.alpha = je.at("alpha").get<double>();
      e.lr_psnr = psnr_from(je.at("lr_psnr"));
      e.sr_psnr = psnr_from(je.at("sr_psnr"));
      e.outer_psnr = optional_psnr_from(je, "outer_psnr");
      if (!je.at("robustness_index").is_null())
        e.robustness_index = je.at("robustness_index").get<double>();
      e.defended_sr_psnr = optional_psnr_from(je, "defended_sr_psnr");
      r.entries.push_back(e);
    }
    for (const Json &js : j.at("summary")) {
      SummaryRow s;
      s.model = js.at("model").get<std::string>();
      s.alpha = js.at("alpha").get<double>();
      s.count = js.at("count").get<int>();
      s.mean_lr_psnr = psnr_from(js.at("mean_lr_psnr"));
      s.mean_sr_psnr = psnr_from(js.at("mean_sr_psnr"));
      s.mean_outer_psnr = optional_psnr_from(js, "mean_outer_psnr");
      s.mean_defended_sr_psnr = optional_psnr_from(js, "mean_defended_sr_psnr");
      r.summary.push_back(s);
    }
    if (!j.at("transfer").is_null()) {
      const Json &jt = j.at("transfer");
      TransferMatrix m;
      m.sources = jt.at("sources").get<std::vector<std::string>>();
      m.targets = jt.at("targets").get<std::vector<std::string>>();
      for (const Json &jr : jt.at("mean_sr_psnr")) {
        std::vector<double> row;
        for (const Json &v : jr)
          row.push_back(psnr_from(v));
        m.mean_sr_psnr.push_back(row);
      }
      r.transfer = m;
    }
    if (!j.at("spearman_defined").is_null()) {
      r.spearman_requested = true;
      if (j.at("spearman_defined").get<bool>())
        r.spearman = j.at("spearman").get<double>();
    }
    return r;
  } catch (const Json::exception &e) {
    raise(ErrorKind::Data, std::string("malformed report: ") + e.what());
  }
}

std::string report_to_csv(const EvalReport &r) {
  std::string out = "image_id,alpha,lr_psnr,sr_psnr,outer_psnr,robustness_"
                    "index,defended_sr_psnr,model\n";
  for (const ImageEntry &e : r.entries) {
    out += csv_field(e.image_id) + "," + format_double(e.alpha) + "," +
           csv_value(e.lr_psnr) + "," + csv_value(e.sr_psnr) + "," +
           csv_optional(e.outer_psnr) + "," +
           (e.robustness_index ? format_double(*e.robustness_index) : "") +
           "," + csv_optional(e.defended_sr_psnr) + "," + csv_field(e.model) +
           "\n";
  }
  return out;
}

std::string transfer_to_csv(const TransferMatrix &m) {
  std::string out = "source";
  for (const auto &t : m.targets)
    out += "," + csv_field(t);
  out += "\n";
  for (std::size_t s = 0; s < m.sources.size(); ++s) {
    out += csv_field(m.sources[s]);
    for (double v : m.mean_sr_psnr[s])
      out += "," + csv_value(v);
    out += "\n";
  }
  return out;
}

void emit_report(const EvalReport &report, ReportFormat format,
                 const std::filesystem::path &path) {
  require(!report.entries.empty(), ErrorKind::Data,
          "refusing to emit a report without entries");
  const std::string text = format == ReportFormat::Json
                               ? report_to_json(report)
                               : report_to_csv(report);
  write_text_file(path, text);
}

void write_text_file(const std::filesystem::path &path,
                     const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    raise(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out)
    raise(ErrorKind::Io, "failed writing " + path.string());
}

} // namespace srab
