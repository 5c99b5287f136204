#include <stdexcept>

#include "gsb/fixture.hpp"
#include "httplib.h"

namespace gsb::fixture {

namespace {

bool wants_xml(const httplib::Request& req) {
  const auto accept = req.get_header_value("Accept");
  const auto xml = accept.find("sparql-results+xml");
  const auto json = accept.find("json");
  return xml != std::string::npos && (json == std::string::npos || xml < json);
}

bool has_content_type(const httplib::Request& req, std::string_view type) {
  return req.get_header_value("Content-Type").starts_with(type);
}

void fail(httplib::Response& res, int status, const std::string& message) {
  res.status = status;
  res.set_content(message + "\n", "text/plain");
}

// Runs `body`, mapping refused requests to their status and anything else to 500.
template <typename F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const RequestError& e) {
    fail(res, e.status(), e.what());
  } catch (const rdf::SyntaxError& e) {
    fail(res, 400, std::string("syntax error: ") + e.what());
  } catch (const std::exception& e) {
    fail(res, 500, e.what());
  }
}

// "?graph=<iri>" or "?default"; the default graph is "".
std::string target_graph(const httplib::Request& req) {
  if (req.has_param("graph")) return req.get_param_value("graph");
  if (req.has_param("default")) return "";
  throw RequestError(400, "expected ?graph=<iri> or ?default");
}

std::vector<rdf::Triple> read_rdf(const httplib::Request& req) {
  const auto type = req.get_header_value("Content-Type");
  if (!type.empty() && !type.starts_with("text/turtle") && !type.starts_with("application/n-triples") &&
      !type.starts_with("application/x-turtle"))
    throw RequestError(415, "unsupported RDF media type '" + type + "' (send text/turtle)");
  return rdf::parse_turtle(req.body);
}

}  // namespace

struct Server::Impl {
  httplib::Server http;
};

Server::Server(Profile profile) : store_(std::move(profile)), impl_(std::make_unique<Impl>()) {
  auto& http = impl_->http;

  auto answer = [this](const httplib::Request& req, httplib::Response& res, const std::string& query) {
    const auto outcome = store_.query(query);
    if (wants_xml(req)) res.set_content(results::render_xml(outcome), std::string(results::kXmlMediaType));
    else res.set_content(results::render_json(outcome), std::string(results::kJsonMediaType));
  };

  http.Get("/sparql", [answer](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      if (!req.has_param("query")) throw RequestError(400, "missing 'query' parameter");
      answer(req, res, req.get_param_value("query"));
    });
  });

  http.Post("/sparql", [answer](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      if (has_content_type(req, "application/sparql-query")) return answer(req, res, req.body);
      if (req.has_param("query")) return answer(req, res, req.get_param_value("query"));
      throw RequestError(400, "expected application/sparql-query or a 'query' form field");
    });
  });

  http.Post("/update", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      if (has_content_type(req, "application/sparql-update")) store_.update(req.body);
      else if (req.has_param("update")) store_.update(req.get_param_value("update"));
      else throw RequestError(400, "expected application/sparql-update or an 'update' form field");
      res.status = 204;
    });
  });

  http.Put("/data", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto graph = target_graph(req);
      const bool existed = store_.has_graph(graph);
      store_.put_graph(graph, read_rdf(req));
      res.status = existed ? 204 : 201;
    });
  });

  http.Post("/data", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      store_.insert(target_graph(req), read_rdf(req));
      res.status = 204;
    });
  });

  http.Delete("/data", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto graph = target_graph(req);
      if (!store_.drop_graph(graph)) throw RequestError(404, "no graph <" + graph + ">");
      res.status = 204;
    });
  });

  http.Get("/data", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto graph = target_graph(req);
      if (!store_.has_graph(graph)) throw RequestError(404, "no graph <" + graph + ">");
      res.set_content(rdf::write_turtle(store_.graph(graph)), "text/turtle");
    });
  });
}

Server::~Server() { stop(); }

int Server::start(const std::string& host, int port) {
  auto& http = impl_->http;
  host_ = host;
  port_ = port == 0 ? http.bind_to_any_port(host) : (http.bind_to_port(host, port) ? port : -1);
  if (port_ <= 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  thread_ = std::thread([&http] { http.listen_after_bind(); });
  http.wait_until_ready();
  return port_;
}

void Server::wait() {
  if (thread_.joinable()) thread_.join();
}

void Server::stop() {
  impl_->http.stop();
  if (thread_.joinable()) thread_.join();
}

std::string Server::query_url() const { return "http://" + host_ + ":" + std::to_string(port_) + "/sparql"; }
std::string Server::data_url() const { return "http://" + host_ + ":" + std::to_string(port_) + "/data"; }
std::string Server::update_url() const { return "http://" + host_ + ":" + std::to_string(port_) + "/update"; }

}  // namespace gsb::fixture
