#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace rpspec {

struct Point2 {
  double x{0.0};
  double y{0.0};
};

/// Parameters of the geometric family h_i = C^i, delta_i = k C^(i alpha).
struct DomainParams {
  double C{0.5};
  double alpha{2.0};
  double k{0.25};
  int n_pieces{2};

  double h(int i) const;      // side of piece i (room side / passage length)
  double delta(int i) const;  // passage height, any even i
};

enum class PieceKind { room, passage };

const char* to_string(PieceKind kind);

struct Piece {
  int index{1};  // 1-based; odd = room, even = passage
  PieceKind kind{PieceKind::room};
  double x_lo{0.0};
  double x_hi{0.0};
  double half_height{0.0};
  double length{0.0};  // h_i, kept separately since x_hi - x_lo loses digits far down the chain

  double width() const { return length; }
  double height() const { return 2.0 * half_height; }
  double area() const { return width() * height(); }
};

/// A chain of square rooms joined by thin passages, laid out left to right
/// from x = 0 and centred on the x-axis.
///
/// For the geometric family the object also stands for the infinite domain:
/// total_area() and tail_area() use the closed-form series limits, while the
/// explicit pieces cover only the first n_pieces of the chain.
class RpDomain {
 public:
  /// Throws std::invalid_argument naming the violated inequality.
  static RpDomain geometric(double C, double alpha, double k, int n_pieces);

  /// General sequences. `h[i-1]` is the x-extent of piece i; `delta[i-1]` is
  /// the height of passage i (entries at odd positions are ignored).
  static RpDomain from_sequences(std::vector<double> h, std::vector<double> delta);

  bool is_geometric() const { return params_.has_value(); }
  const std::optional<DomainParams>& params() const { return params_; }
  /// Throws if the domain is not from the geometric family.
  const DomainParams& geometric_params() const;

  int size() const { return static_cast<int>(pieces_.size()); }
  std::span<const Piece> pieces() const { return pieces_; }
  const Piece& piece(int index) const;

  /// Piece sizes; for the geometric family indices beyond size() follow the formula.
  double h(int i) const;
  double delta(int i) const;

  /// |Omega_n|: area of the first n pieces (closed form for the geometric family).
  double area_upto(int n_pieces) const;
  /// Same quantity by direct summation over pieces.
  double area_upto_summed(int n_pieces) const;
  /// |Omega|; the infinite-chain limit for the geometric family.
  double total_area() const;
  /// |T_2M| = |Omega| - |Omega_2M|.
  double tail_area(int M) const;

  /// Interior test for the open union of piece rectangles, including the
  /// shared openings between neighbours.
  bool contains(Point2 p) const;

  double length() const { return pieces_.empty() ? 0.0 : pieces_.back().x_hi; }

 private:
  RpDomain() = default;
  void layout(const std::vector<double>& h, const std::vector<double>& delta);

  std::optional<DomainParams> params_;
  std::vector<Piece> pieces_;
};

nlohmann::json to_json(const RpDomain& domain);
RpDomain domain_from_json(const nlohmann::json& j);

}  // namespace rpspec
