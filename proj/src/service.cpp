#include "atd/service.hpp"

#include <httplib.h>

#include "atd/report_format.hpp"

namespace atd {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json point_json(const Point& p) {
  return {{"n", p.n}, {"d", p.d}, {"u", p.u}, {"s", p.s}, {"h", p.h}, {"a", p.a}, {"theta", p.theta}};
}

const json& member(const json& body, const char* key, const std::string& field) {
  if (!body.is_object() || !body.contains(key))
    throw Error(ErrorKind::validation, field, "missing field " + field);
  return body.at(key);
}

double number_at(const json& body, const char* key, const std::string& prefix) {
  const std::string field = prefix + key;
  const json& v = member(body, key, field);
  if (!v.is_number()) throw Error(ErrorKind::validation, field, field + " must be a number");
  return v.get<double>();
}

int integer_at(const json& body, const char* key, const std::string& prefix) {
  const std::string field = prefix + key;
  const json& v = member(body, key, field);
  if (!v.is_number_integer()) throw Error(ErrorKind::validation, field, field + " must be an integer");
  return v.get<int>();
}

Overrides overrides_from(const json& body) {
  Overrides out;
  if (!body.contains("overrides")) return out;
  const json& ov = body.at("overrides");
  if (!ov.is_object())
    throw Error(ErrorKind::validation, "overrides", "overrides must be an object of sections");
  for (const auto& [section, keys] : ov.items()) {
    if (!keys.is_object())
      throw Error(ErrorKind::validation, "overrides." + section,
                  "overrides." + section + " must be an object");
    for (const auto& [key, value] : keys.items()) {
      const std::string field = "overrides." + section + "." + key;
      if (value.is_number())
        out[section][key] = format_number(value.get<double>());
      else if (value.is_boolean())
        out[section][key] = value.get<bool>() ? "true" : "false";
      else if (value.is_string())
        out[section][key] = value.get<std::string>();
      else
        throw Error(ErrorKind::validation, field, field + " must be a number, string or boolean");
    }
  }
  return out;
}

Point point_from(const json& j, const ParameterFile& params, const std::string& prefix) {
  if (!j.is_object()) throw Error(ErrorKind::validation, prefix, prefix + " must be an object");
  const std::string p = prefix + ".";
  Point pt;
  pt.n = number_at(j, "n", p);
  pt.d = j.contains("d") ? number_at(j, "d", p) : 0.0;
  if (j.contains("u"))
    pt.u = number_at(j, "u", p);
  else if (params.meta.tie_u_to_n)
    pt.u = pt.n;
  else
    throw Error(ErrorKind::validation, p + "u", "missing field " + p + "u");
  pt.s = number_at(j, "s", p);
  pt.h = number_at(j, "h", p);
  pt.a = number_at(j, "a", p);
  pt.theta = number_at(j, "theta", p);
  pt.validate(p);
  return pt;
}

int status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return 400;
    case ErrorKind::io: return 500;
    default: return 422;
  }
}

HttpResponse error_response(int status, std::string_view kind, const std::string& field,
                            const std::string& message) {
  json body = {{"error", {{"kind", kind}, {"field", field}, {"message", message}}}};
  return {status, "application/json", body.dump()};
}

HttpResponse ok(const json& body) { return {200, "application/json", body.dump()}; }

}  // namespace

json to_json(const ParameterFile& p) {
  json categories = json::array();
  for (Category c : kAllCategories) {
    const auto k = p.categories[c];
    categories.push_back({{"id", to_string(c)},
                          {"name", display_name(c)},
                          {"f", k.fixed},
                          {"v", k.variable},
                          {"beta", k.beta},
                          {"gamma_u", k.gamma_u},
                          {"gamma_s", k.gamma_s},
                          {"gamma_h", k.gamma_h},
                          {"gamma_a", k.gamma_a},
                          {"gamma_theta", k.gamma_theta},
                          {"status", to_string(p.status_of(c))}});
  }
  json components = json::object(), weights = json::object(), coupling = json::object(),
       cost_rem = json::object(), cost_coord = json::object();
  for (std::size_t i = 0; i < kComponentCount; ++i) {
    const std::string name(to_string(kAllComponents[i]));
    components[name] = p.debt.components[kAllComponents[i]];
    weights[name] = p.debt.weights.component(Eigen::Index(i));
    cost_rem[name] = p.debt.costs.remediation(Eigen::Index(i));
  }
  for (auto [a, b] : component_pairs()) {
    const std::string pair = std::string(to_string(a)) + "_" + std::string(to_string(b));
    coupling[pair] = p.debt.weights.coupling_of(a, b);
    cost_coord[pair] = p.debt.costs.coordination_of(a, b);
  }
  json scenarios = json::array();
  for (const auto& s : p.scenarios)
    scenarios.push_back(
        {{"name", s.name}, {"description", s.description}, {"point", point_json(s.point)}});
  json paths = json::array();
  for (const auto& path : p.paths)
    paths.push_back({{"name", path.name},
                     {"description", path.description},
                     {"months", path.months},
                     {"d0", path.dynamics.initial},
                     {"acc", path.dynamics.accrual},
                     {"rem", path.dynamics.remediation},
                     {"point", point_json(path.point)}});
  const DebtComponents<double>& d = p.debt.components;
  return {
      {"meta",
       {{"currency", p.meta.currency}, {"period", p.meta.period}, {"tie_u_to_n", p.meta.tie_u_to_n}}},
      {"reference",
       {{"u0", p.reference.u0},
        {"s0", p.reference.s0},
        {"h0", p.reference.h0},
        {"a0", p.reference.a0},
        {"theta0", p.reference.theta0}}},
      {"categories", categories},
      {"debt",
       {{"components", components},
        {"weights", weights},
        {"coupling", coupling},
        {"cost_rem", cost_rem},
        {"cost_coord", cost_coord},
        {"cost_retest", p.debt.costs.retest},
        {"index", debt_index(d, p.debt.weights)},
        {"principal", debt_principal(d, p.debt.costs)}}},
      {"scenarios", scenarios},
      {"sweep",
       {{"d_from", p.sweep.d_from},
        {"d_to", p.sweep.d_to},
        {"steps", p.sweep.steps},
        {"point", point_json(p.sweep.point)}}},
      {"paths", paths},
  };
}

json to_json(const Report& r, const Point& point, const ParameterFile& params) {
  json categories = json::array();
  for (Category c : kAllCategories) {
    const Eigen::Index k = index_of(c);
    categories.push_back({{"id", to_string(c)},
                          {"cost", r.cost(k)},
                          {"phi", r.debt_factor(k)},
                          {"psi", r.exposure_factor(k)},
                          {"beta", params.categories.beta(k)},
                          {"status", to_string(params.status_of(c))}});
  }
  json display = {{"tst", round_total(r.total)}};
  display["st_per_tx"] = r.per_tx ? json(round_per_tx(*r.per_tx)) : json(nullptr);
  display["st0_per_tx"] = r.baseline_per_tx ? json(round_per_tx(*r.baseline_per_tx)) : json(nullptr);
  display["std_per_tx"] = r.debt_per_tx ? json(round_per_tx(*r.debt_per_tx)) : json(nullptr);
  return {{"point", point_json(point)},
          {"tst", r.total},
          {"baseline_tst", r.baseline_total},
          {"st_per_tx", optional_number(r.per_tx)},
          {"st0_per_tx", optional_number(r.baseline_per_tx)},
          {"std_per_tx", optional_number(r.debt_per_tx)},
          {"per_tx_defined", r.per_tx.has_value()},
          {"categories", categories},
          {"display", display},
          {"currency", params.meta.currency}};
}

json to_json(const ScenarioRow& row, const ParameterFile& params) {
  json j = to_json(row.report, row.spec.point, params);
  j["scenario"] = row.spec.name;
  j["description"] = row.spec.description;
  return j;
}

json to_json(const SweepRow& row) {
  return {{"d", row.d},
          {"tst", row.total},
          {"st_per_tx", optional_number(row.per_tx)},
          {"pct_change_vs_d0", optional_number(row.pct_change)}};
}

json to_json(const PathSeries& series) {
  json points = json::array();
  for (const auto& pt : series.points)
    points.push_back({{"month", pt.month},
                      {"d", pt.d},
                      {"tst", pt.total},
                      {"st_per_tx", optional_number(pt.per_tx)}});
  return {{"name", series.name}, {"transactions", series.transactions}, {"points", points}};
}

json to_json(const Insight& i) {
  return {{"key", i.key}, {"label", i.label}, {"value", i.value}, {"unit", i.unit}};
}

json to_json(const CategoryCalibration& c) {
  json j = {{"category", to_string(c.category)}, {"observations", c.observations}};
  if (c.fit) {
    j["beta"] = c.fit->beta;
    j["residual_ss"] = c.fit->residual_ss;
  } else {
    j["beta"] = nullptr;
    j["diagnostic"] = c.diagnostic;
  }
  return j;
}

EvaluationService::EvaluationService(ParameterFile snapshot)
    : snapshot_(std::make_shared<const ParameterFile>(std::move(snapshot))) {
  validate(*snapshot_);
}

HttpResponse EvaluationService::handle(std::string_view method, std::string_view path,
                                       std::string_view body) const {
  try {
    return route(method, path, body);
  } catch (const json::exception& e) {
    return error_response(400, "parse", "body", std::string("malformed JSON: ") + e.what());
  } catch (const Error& e) {
    return error_response(status_for(e.kind()), to_string(e.kind()), e.field(), e.what());
  } catch (const std::exception&) {
    return error_response(500, "internal", "", "internal error");
  }
}

HttpResponse EvaluationService::route(std::string_view method, std::string_view path,
                                      std::string_view body) const {
  const bool get = method == "GET";
  const bool post = method == "POST";
  auto wrong_method = [&](const char* allowed) {
    return error_response(405, "method", "", std::string("use ") + allowed + " for " +
                                                 std::string(path));
  };
  auto parse_body = [&]() {
    json j = body.empty() ? json::object() : json::parse(body);
    if (!j.is_object())
      throw Error(ErrorKind::validation, "body", "request body must be a JSON object");
    return j;
  };
  auto params_for = [&](const json& j) {
    const Overrides ov = overrides_from(j);
    return ov.empty() ? *snapshot_ : with_overrides(*snapshot_, ov);
  };

  if (path == "/v1/defaults") {
    if (!get) return wrong_method("GET");
    return ok({{"parameters", to_json(*snapshot_)},
               {"parameter_file", serialize_parameters(*snapshot_)}});
  }
  if (path == "/v1/dictionary") {
    if (!get) return wrong_method("GET");
    return {200, "text/plain; charset=utf-8", emit_data_dictionary()};
  }
  if (path == "/v1/scenarios") {
    if (!get) return wrong_method("GET");
    const ParameterFile& p = *snapshot_;
    const auto rows = run_scenarios(p.scenarios, p.categories, p.reference);
    const auto paths = run_paths(p.paths, p.categories, p.reference);
    json scenarios = json::array(), insights = json::array();
    for (const auto& row : rows) scenarios.push_back(to_json(row, p));
    for (const auto& i : headline_insights(rows, paths)) insights.push_back(to_json(i));
    return ok({{"scenarios", scenarios}, {"insights", insights}});
  }
  if (path == "/v1/evaluate") {
    if (!post) return wrong_method("POST");
    const json j = parse_body();
    const ParameterFile p = params_for(j);

    Point point;
    std::string scenario;
    if (j.contains("scenario")) {
      if (!j.at("scenario").is_string())
        throw Error(ErrorKind::validation, "scenario", "scenario must be a string");
      scenario = j.at("scenario").get<std::string>();
      const ScenarioSpec* spec = p.find_scenario(scenario);
      if (!spec) throw Error(ErrorKind::validation, "scenario", "unknown scenario " + scenario);
      point = spec->point;
    } else {
      point = point_from(member(j, "point", "point"), p, "point");
    }

    std::vector<std::string> outputs{"report"};
    if (j.contains("outputs")) {
      outputs.clear();
      if (!j.at("outputs").is_array())
        throw Error(ErrorKind::validation, "outputs", "outputs must be an array");
      for (const auto& o : j.at("outputs")) {
        if (!o.is_string()) throw Error(ErrorKind::validation, "outputs", "outputs must be strings");
        outputs.push_back(o.get<std::string>());
      }
    }

    json response = json::object();
    if (!scenario.empty()) response["scenario"] = scenario;
    for (const auto& o : outputs) {
      if (o == "report") {
        response["report"] = to_json(evaluate(p.categories, point, p.reference), point, p);
      } else if (o == "sweep") {
        json rows = json::array();
        for (const auto& r : run_sweep(p.sweep, p.categories, p.reference)) rows.push_back(to_json(r));
        response["sweep"] = rows;
      } else if (o == "paths") {
        json paths = json::array();
        for (const auto& s : run_paths(p.paths, p.categories, p.reference))
          paths.push_back(to_json(s));
        response["paths"] = paths;
      } else if (o == "insights") {
        const auto rows = run_scenarios(p.scenarios, p.categories, p.reference);
        const auto paths = run_paths(p.paths, p.categories, p.reference);
        json insights = json::array();
        for (const auto& i : headline_insights(rows, paths)) insights.push_back(to_json(i));
        response["insights"] = insights;
      } else {
        throw Error(ErrorKind::validation, "outputs",
                    "unknown output '" + o + "' (expected report, sweep, paths or insights)");
      }
    }
    return ok(response);
  }
  if (path == "/v1/sweep") {
    if (!post) return wrong_method("POST");
    const json j = parse_body();
    const ParameterFile p = params_for(j);
    SweepSpec spec = p.sweep;
    if (j.contains("sweep")) {
      const json& s = j.at("sweep");
      if (!s.is_object()) throw Error(ErrorKind::validation, "sweep", "sweep must be an object");
      if (s.contains("d_from")) spec.d_from = number_at(s, "d_from", "sweep.");
      if (s.contains("d_to")) spec.d_to = number_at(s, "d_to", "sweep.");
      if (s.contains("steps")) spec.steps = integer_at(s, "steps", "sweep.");
      if (s.contains("point")) spec.point = point_from(s.at("point"), p, "sweep.point");
    }
    json rows = json::array();
    for (const auto& r : run_sweep(spec, p.categories, p.reference)) rows.push_back(to_json(r));
    return ok({{"rows", rows}});
  }
  if (path == "/v1/paths") {
    if (!post) return wrong_method("POST");
    const json j = parse_body();
    const ParameterFile p = params_for(j);
    std::vector<PathSpec> specs = p.paths;
    if (j.contains("months")) {
      const int months = integer_at(j, "months", "");
      for (auto& s : specs) s.months = months;
    }
    json paths = json::array();
    for (const auto& s : run_paths(specs, p.categories, p.reference)) paths.push_back(to_json(s));
    return ok({{"paths", paths}});
  }
  if (path == "/v1/calibrate") {
    if (!post) return wrong_method("POST");
    const json j = parse_body();
    const ParameterFile p = params_for(j);
    std::vector<CalibrationObservation<double>> obs;
    if (j.contains("observations_csv")) {
      if (!j.at("observations_csv").is_string())
        throw Error(ErrorKind::validation, "observations_csv", "observations_csv must be a string");
      obs = parse_observations(j.at("observations_csv").get<std::string>());
    } else {
      const json& list = member(j, "observations", "observations");
      if (!list.is_array())
        throw Error(ErrorKind::validation, "observations", "observations must be an array");
      for (std::size_t i = 0; i < list.size(); ++i) {
        const json& o = list[i];
        const std::string prefix = "observations[" + std::to_string(i) + "]";
        CalibrationObservation<double> c;
        const json& cat = member(o, "category", prefix + ".category");
        const auto parsed = cat.is_string() ? parse_category(cat.get<std::string>()) : std::nullopt;
        if (!parsed)
          throw Error(ErrorKind::validation, prefix + ".category", prefix + ".category is unknown");
        c.category = *parsed;
        if (o.contains("period") && o.at("period").is_string())
          c.period = o.at("period").get<std::string>();
        c.cost = number_at(o, "cost", prefix + ".");
        if (!(c.cost >= 0.0))
          throw Error(ErrorKind::validation, prefix + ".cost", prefix + ".cost must be non-negative");
        c.point = point_from(o, p, prefix);
        obs.push_back(std::move(c));
      }
    }
    json results = json::array();
    for (const auto& r : calibrate_categories(obs, p.categories, p.reference))
      results.push_back(to_json(r));
    return ok({{"results", results}});
  }
  return error_response(404, "not_found", "", "no route for " + std::string(path));
}

HttpServer::HttpServer(const EvaluationService& service, ServeOptions options)
    : service_(service), options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    const HttpResponse r = service_.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  const char* api = R"(/v1/.*)";
  server_->Get(api, forward);
  server_->Post(api, forward);
  server_->Put(api, forward);
  server_->Delete(api, forward);
  server_->Patch(api, forward);
  if (!options_.static_dir.empty() && !server_->set_mount_point("/", options_.static_dir.string()))
    throw Error(ErrorKind::io, "static_dir",
                "static asset directory not found: " + options_.static_dir.string());
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
  if (options_.port == 0)
    port_ = server_->bind_to_any_port(options_.host);
  else
    port_ = server_->bind_to_port(options_.host, options_.port) ? options_.port : -1;
  if (port_ < 0)
    throw Error(ErrorKind::io, "port",
                "cannot bind " + options_.host + ":" + std::to_string(options_.port));
  return port_;
}

int HttpServer::start() {
  const int port = bind();
  worker_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port;
}

void HttpServer::run() {
  bind();
  server_->listen_after_bind();
}

void HttpServer::stop() {
  if (server_) server_->stop();
  if (worker_.joinable()) worker_.join();
}

}  // namespace atd
