#include <chrono>
#include <regex>

#include "chartscribe/error.hpp"
#include "chartscribe/ingestion.hpp"
#include "httplib.h"

namespace chartscribe::ingest {

namespace {

class HttplibTransport final : public HttpTransport {
public:
    HttpResponse get(const std::string& url, const std::string& bearer_token,
                     std::chrono::milliseconds timeout) override {
        static const std::regex url_re(R"(^(https?://[^/?#]+)(.*)$)", std::regex::icase);
        std::smatch m;
        if (!std::regex_match(url, m, url_re)) throw Error(ErrorCode::UpstreamError, "unsupported URL: " + url);
        const std::string path = m[2].length() ? m[2].str() : "/";

        httplib::Client client(m[1].str());
        client.set_connection_timeout(timeout);
        client.set_read_timeout(timeout);
        client.set_write_timeout(timeout);
        client.set_bearer_token_auth(bearer_token);

        const auto started = std::chrono::steady_clock::now();
        auto res = client.Get(path);
        if (!res) {
            const auto err = res.error();
            const bool slow = std::chrono::steady_clock::now() - started >= timeout;
            if (err == httplib::Error::ConnectionTimeout || (err == httplib::Error::Read && slow)) {
                throw Error(ErrorCode::TimeoutExceeded, url);
            }
            throw Error(ErrorCode::UpstreamError, httplib::to_string(err) + ": " + url);
        }
        return HttpResponse{res->status, res->body};
    }
};

}  // namespace

std::unique_ptr<HttpTransport> make_http_transport() {
    return std::make_unique<HttplibTransport>();
}

}  // namespace chartscribe::ingest
