#pragma once

// HTTP/JSON routes over Service:
//   GET  /functions
//   POST /experiments                     {fid, dim, config?, evals_per_dim?} -> {id}
//   GET  /experiments/{id}
//   POST /experiments/{id}/global         {n_runs} -> {job_id}
//   GET  /experiments/{id}/octants
//   GET  /experiments/{id}/preview?octant_index=6&scale_exponent=80
//   POST /experiments/{id}/preview        {octant_index | box, scale_exponent} -> {region}
//   POST /experiments/{id}/local          {octant_index | box, scale_exponent, n_runs} -> {job_id}
//   POST /experiments/{id}/satisfied      -> final report
//   GET  /jobs/{job_id}                   -> {completed, total, phase_index, ...}
// Errors are {"error": kind, "message": text} with 400, 404 or 409.

#include <stdexcept>
#include <string>

#include <httplib.h>

#include "hctps/error.hpp"
#include "hctps/json_io.hpp"
#include "hctps/service.hpp"

namespace hctps {

inline int http_status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownExperiment:
    case ErrorKind::UnknownJob: return 404;
    case ErrorKind::AlreadyRan:
    case ErrorKind::GlobalPending:
    case ErrorKind::JobInFlight:
    case ErrorKind::Frozen:
    case ErrorKind::NoPhases: return 409;
    case ErrorKind::Io:
    case ErrorKind::CorruptRecord: return 500;
    default: return 400;
  }
}

inline json functions_catalog() {
  json out = json::array();
  for (const auto& info : kFunctionCatalog) {
    const auto& fx = subcube_for_function(info.id);
    json entry = {{"id", std::string(info.code)},
                  {"name", std::string(info.name)},
                  {"subcube", box_to_json(fx.octant)},
                  {"scale_exponent", fx.scale_exponent}};
    if (fx.corrected) entry["corrected_subcube"] = box_to_json(*fx.corrected);
    out.push_back(std::move(entry));
  }
  return out;
}

/// Parses {octant_index | box, scale_exponent}.
inline LocalTarget local_target_from_json(const json& j) {
  LocalTarget target;
  if (j.contains("octant_index") && !j.at("octant_index").is_null()) target.octant_index = j.at("octant_index").get<int>();
  if (j.contains("box") && !j.at("box").is_null()) target.box = box_from_json(j.at("box"));
  target.scale_exponent = j.value("scale_exponent", 0);
  return target;
}

inline void bind_routes(httplib::Server& server, Service& service) {
  auto reply = [](httplib::Response& res, const json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  };

  auto guarded = [reply](auto handler) {
    return [reply, handler](const httplib::Request& req, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", "*");
      try {
        handler(req, res);
      } catch (const Error& e) {
        reply(res, {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}, http_status_for(e.kind()));
      } catch (const json::exception& e) {
        reply(res, {{"error", "InvalidRequest"}, {"message", e.what()}}, 400);
      } catch (const std::logic_error& e) {
        reply(res, {{"error", "InvalidRequest"}, {"message", e.what()}}, 400);
      } catch (const std::exception& e) {
        reply(res, {{"error", "Internal"}, {"message", e.what()}}, 500);
      }
    };
  };

  auto body_of = [](const httplib::Request& req) { return req.body.empty() ? json::object() : json::parse(req.body); };

  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  server.Get("/functions", guarded([reply](const httplib::Request&, httplib::Response& res) {
               reply(res, functions_catalog());
             }));

  server.Post("/experiments", guarded([&service, reply, body_of](const httplib::Request& req, httplib::Response& res) {
                const json body = body_of(req);
                const FunctionId fid = body.at("fid").get<FunctionId>();
                const auto dim = body.at("dim").get<std::size_t>();
                GAConfig config;
                if (body.contains("config") && !body.at("config").is_null()) config = body.at("config").get<GAConfig>();
                const auto per_dim = body.value("evals_per_dim", kEvaluationsPerDim);
                reply(res, {{"id", service.create_experiment(fid, dim, config, per_dim)}}, 201);
              }));

  server.Get(R"(/experiments/([^/]+))", guarded([&service, reply](const httplib::Request& req, httplib::Response& res) {
               reply(res, service.experiment_view(req.matches[1]));
             }));

  server.Post(R"(/experiments/([^/]+)/global)",
              guarded([&service, reply, body_of](const httplib::Request& req, httplib::Response& res) {
                const json body = body_of(req);
                const auto n_runs = body.value("n_runs", std::size_t{20});
                reply(res, {{"job_id", service.start_global(req.matches[1], n_runs)}}, 202);
              }));

  server.Get(R"(/experiments/([^/]+)/octants)",
             guarded([&service, reply](const httplib::Request& req, httplib::Response& res) {
               reply(res, service.octants(req.matches[1]));
             }));

  server.Get(R"(/experiments/([^/]+)/preview)",
             guarded([&service, reply](const httplib::Request& req, httplib::Response& res) {
               LocalTarget target;
               if (req.has_param("octant_index")) target.octant_index = std::stoi(req.get_param_value("octant_index"));
               if (req.has_param("scale_exponent")) target.scale_exponent = std::stoi(req.get_param_value("scale_exponent"));
               const Box region = service.preview(req.matches[1], target);
               reply(res, {{"region", box_to_json(region)}});
             }));

  server.Post(R"(/experiments/([^/]+)/preview)",
              guarded([&service, reply, body_of](const httplib::Request& req, httplib::Response& res) {
                const Box region = service.preview(req.matches[1], local_target_from_json(body_of(req)));
                reply(res, {{"region", box_to_json(region)}});
              }));

  server.Post(R"(/experiments/([^/]+)/local)",
              guarded([&service, reply, body_of](const httplib::Request& req, httplib::Response& res) {
                const json body = body_of(req);
                const auto n_runs = body.value("n_runs", std::size_t{20});
                reply(res, {{"job_id", service.start_local(req.matches[1], local_target_from_json(body), n_runs)}}, 202);
              }));

  server.Post(R"(/experiments/([^/]+)/satisfied)",
              guarded([&service, reply](const httplib::Request& req, httplib::Response& res) {
                reply(res, service.mark_satisfied(req.matches[1]));
              }));

  server.Get(R"(/jobs/([^/]+))", guarded([&service, reply](const httplib::Request& req, httplib::Response& res) {
               reply(res, service.job(req.matches[1]));
             }));
}

}  // namespace hctps
