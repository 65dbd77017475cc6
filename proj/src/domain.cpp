#include "rpspec/domain.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rpspec {

namespace {

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double DomainParams::h(int i) const { return std::pow(C, i); }

double DomainParams::delta(int i) const { return k * std::pow(C, i * alpha); }

const char* to_string(PieceKind kind) {
  return kind == PieceKind::room ? "room" : "passage";
}

RpDomain RpDomain::geometric(double C, double alpha, double k, int n_pieces) {
  if (!(C > 0.0 && C < 1.0))
    throw std::invalid_argument("domain: need 0 < C < 1, got C=" + fmt_num(C));
  if (!(alpha > 1.0))
    throw std::invalid_argument("domain: need alpha > 1, got alpha=" + fmt_num(alpha));
  if (!(k > 0.0)) throw std::invalid_argument("domain: need k > 0, got k=" + fmt_num(k));
  const double kmax = std::pow(C, 3.0 - 2.0 * alpha);
  if (!(k < kmax))
    throw std::invalid_argument("domain: need k < C^(3-2*alpha) = " + fmt_num(kmax) +
                                ", got k=" + fmt_num(k));
  if (n_pieces < 2 || n_pieces % 2 != 0)
    throw std::invalid_argument("domain: n_pieces must be even and >= 2, got " +
                                std::to_string(n_pieces));

  DomainParams p{C, alpha, k, n_pieces};
  // the last passage abuts room n+1 of the infinite chain, so check it too
  for (int i = 2; i <= n_pieces; i += 2) {
    const double d = p.delta(i);
    const double lim = std::min(p.h(i - 1), p.h(i + 1));
    if (!(d < lim))
      throw std::invalid_argument("domain: delta_" + std::to_string(i) + " = " + fmt_num(d) +
                                  " must be < min(h_" + std::to_string(i - 1) + ", h_" +
                                  std::to_string(i + 1) + ") = " + fmt_num(lim));
  }

  std::vector<double> h(n_pieces), delta(n_pieces, 0.0);
  for (int i = 1; i <= n_pieces; ++i) {
    h[i - 1] = p.h(i);
    if (i % 2 == 0) delta[i - 1] = p.delta(i);
  }
  RpDomain d;
  d.params_ = p;
  d.layout(h, delta);
  return d;
}

RpDomain RpDomain::from_sequences(std::vector<double> h, std::vector<double> delta) {
  if (h.empty()) throw std::invalid_argument("domain: empty size sequence");
  if (delta.size() != h.size())
    throw std::invalid_argument("domain: h and delta sequences must have equal length");
  const int n = static_cast<int>(h.size());
  for (int i = 1; i <= n; ++i) {
    if (!(h[i - 1] > 0.0))
      throw std::invalid_argument("domain: h_" + std::to_string(i) + " must be positive");
    if (i % 2 == 1 && i >= 3 && !(h[i - 1] < h[i - 3]))
      throw std::invalid_argument("domain: room sides must strictly decrease at room " +
                                  std::to_string(i));
    if (i % 2 == 0) {
      const double d = delta[i - 1];
      double lim = h[i - 2];
      if (i < n) lim = std::min(lim, h[i]);
      if (!(d > 0.0 && d < lim))
        throw std::invalid_argument("domain: delta_" + std::to_string(i) + " = " + fmt_num(d) +
                                    " must lie in (0, " + fmt_num(lim) + ")");
    } else {
      delta[i - 1] = 0.0;
    }
  }
  RpDomain d;
  d.layout(h, delta);
  return d;
}

void RpDomain::layout(const std::vector<double>& h, const std::vector<double>& delta) {
  pieces_.clear();
  pieces_.reserve(h.size());
  double x = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    Piece p;
    p.index = static_cast<int>(i) + 1;
    p.kind = (p.index % 2 == 1) ? PieceKind::room : PieceKind::passage;
    p.x_lo = x;
    p.x_hi = x + h[i];
    p.length = h[i];
    p.half_height = (p.kind == PieceKind::room ? h[i] : delta[i]) / 2.0;
    x = p.x_hi;
    pieces_.push_back(p);
  }
}

const DomainParams& RpDomain::geometric_params() const {
  if (!params_) throw std::logic_error("domain: operation needs the geometric family");
  return *params_;
}

const Piece& RpDomain::piece(int index) const {
  if (index < 1 || index > size())
    throw std::out_of_range("domain: piece index " + std::to_string(index) + " out of range");
  return pieces_[index - 1];
}

double RpDomain::h(int i) const {
  if (params_) return params_->h(i);
  return piece(i).width();
}

double RpDomain::delta(int i) const {
  if (i % 2 != 0) throw std::invalid_argument("domain: delta is defined for even indices only");
  if (params_) return params_->delta(i);
  return piece(i).height();
}

double RpDomain::area_upto(int n) const {
  if (n < 0) throw std::out_of_range("domain: negative piece count");
  if (!params_) return area_upto_summed(n);
  if (n > size())
    throw std::out_of_range("domain: area_upto(" + std::to_string(n) + ") beyond " +
                            std::to_string(size()) + " pieces");
  const auto& p = *params_;
  const int rooms = (n + 1) / 2;
  const int passages = n / 2;
  const double c4 = std::pow(p.C, 4);
  const double q = std::pow(p.C, 2.0 * (1.0 + p.alpha));
  const double room_sum = p.C * p.C * (1.0 - std::pow(c4, rooms)) / (1.0 - c4);
  const double pass_sum = p.k * q * (1.0 - std::pow(q, passages)) / (1.0 - q);
  return room_sum + pass_sum;
}

double RpDomain::area_upto_summed(int n) const {
  if (n < 0 || n > size())
    throw std::out_of_range("domain: area_upto(" + std::to_string(n) + ") beyond " +
                            std::to_string(size()) + " pieces");
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += pieces_[i].area();
  return s;
}

double RpDomain::total_area() const {
  if (!params_) return area_upto_summed(size());
  const auto& p = *params_;
  const double q = std::pow(p.C, 2.0 * (1.0 + p.alpha));
  return p.C * p.C / (1.0 - std::pow(p.C, 4)) + p.k * q / (1.0 - q);
}

double RpDomain::tail_area(int M) const {
  if (M < 0) throw std::out_of_range("domain: tail_area needs M >= 0");
  if (!params_) {
    if (2 * M >= size()) return 0.0;
    return total_area() - area_upto_summed(2 * M);
  }
  const auto& p = *params_;
  const double c4 = std::pow(p.C, 4);
  const double q = std::pow(p.C, 2.0 * (1.0 + p.alpha));
  return std::pow(p.C, 2.0 + 4.0 * M) / (1.0 - c4) + p.k * q * std::pow(q, M) / (1.0 - q);
}

bool RpDomain::contains(Point2 p) const {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Piece& pc = pieces_[i];
    if (!(std::abs(p.y) < pc.half_height)) continue;
    if (p.x > pc.x_lo && p.x < pc.x_hi) return true;
    // shared vertical boundary: interior when the neighbour also spans y
    if (p.x == pc.x_hi && i + 1 < pieces_.size() &&
        std::abs(p.y) < pieces_[i + 1].half_height)
      return true;
  }
  return false;
}

nlohmann::json to_json(const RpDomain& domain) {
  nlohmann::json j;
  if (domain.is_geometric()) {
    const auto& p = domain.geometric_params();
    j["params"] = {{"C", p.C}, {"alpha", p.alpha}, {"k", p.k}, {"n_pieces", p.n_pieces}};
  } else {
    j["params"] = nullptr;
  }
  j["pieces"] = nlohmann::json::array();
  for (const auto& pc : domain.pieces()) {
    j["pieces"].push_back({{"index", pc.index},
                           {"kind", to_string(pc.kind)},
                           {"x_lo", pc.x_lo},
                           {"x_hi", pc.x_hi},
                           {"half_height", pc.half_height}});
  }
  return j;
}

RpDomain domain_from_json(const nlohmann::json& j) {
  if (j.contains("params") && !j["params"].is_null()) {
    const auto& p = j["params"];
    return RpDomain::geometric(p.at("C").get<double>(), p.at("alpha").get<double>(),
                               p.at("k").get<double>(), p.at("n_pieces").get<int>());
  }
  std::vector<double> h, delta;
  for (const auto& pc : j.at("pieces")) {
    h.push_back(pc.at("x_hi").get<double>() - pc.at("x_lo").get<double>());
    delta.push_back(pc.at("kind").get<std::string>() == "passage"
                        ? 2.0 * pc.at("half_height").get<double>()
                        : 0.0);
  }
  return RpDomain::from_sequences(std::move(h), std::move(delta));
}

}  // namespace rpspec
