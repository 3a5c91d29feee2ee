/*
 * Copyright 2026 The rankcurve Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "rankcurve/linpoly.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace rankcurve {

namespace {

int64_t wrap(int64_t i, int64_t n) { return ((i % n) + n) % n; }

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

}  // namespace

LinPoly::LinPoly(FieldPtr ctx) : ctx_(std::move(ctx)) { a_.assign(ctx_->N(), ctx_->zero()); }

LinPoly::LinPoly(FieldPtr ctx, std::vector<Felt> coeffs) : ctx_(std::move(ctx)), a_(std::move(coeffs)) {
  if (a_.size() > ctx_->N()) {
    std::vector<Felt> folded(ctx_->N(), ctx_->zero());
    for (std::size_t i = 0; i < a_.size(); ++i) folded[i % ctx_->N()] += a_[i];
    a_ = std::move(folded);
  }
  a_.resize(ctx_->N(), ctx_->zero());
  for (const auto& c : a_) check_same(ctx_.get(), c.ctx());
}

LinPoly LinPoly::monomial(FieldPtr ctx, int64_t i, Felt c) {
  LinPoly out(ctx);
  check_same(ctx.get(), c.ctx());
  out.a_[wrap(i, ctx->N())] = c;
  return out;
}

LinPoly LinPoly::monomial(FieldPtr ctx, int64_t i) { return monomial(ctx, i, ctx->one()); }

LinPoly LinPoly::from_terms(FieldPtr ctx, const std::vector<std::pair<int64_t, Felt>>& terms) {
  LinPoly out(ctx);
  for (const auto& [i, c] : terms) {
    if (i < 0) raise(ErrorCode::InvalidArgument, "negative q-degree");
    check_same(ctx.get(), c.ctx());
    out.a_[wrap(i, ctx->N())] += c;
  }
  return out;
}

LinPoly LinPoly::parse(FieldPtr ctx, const std::string& literal) {
  std::vector<std::pair<int64_t, Felt>> terms;
  std::string body = strip(literal);
  if (body.empty()) raise(ErrorCode::SpecParse, "empty polynomial literal");
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t end = body.find(';', pos);
    if (end == std::string::npos) end = body.size();
    std::string term = body.substr(pos, end - pos);
    pos = end + 1;
    if (term.empty()) {
      if (end == body.size()) break;
      raise(ErrorCode::SpecParse, "empty term in '" + literal + "'");
    }
    std::size_t star = term.find('*');
    std::string coeff = star == std::string::npos ? "1" : term.substr(0, star);
    std::string mono = star == std::string::npos ? term : term.substr(star + 1);
    int64_t idx = 0;
    if (mono == "x") {
      idx = 0;
    } else if (mono.rfind("x^q^", 0) == 0) {
      std::string_view v(mono);
      v.remove_prefix(4);
      auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), idx);
      if (v.empty() || ec != std::errc() || ptr != v.data() + v.size() || idx < 0)
        raise(ErrorCode::SpecParse, "bad monomial '" + mono + "'");
    } else if (mono == "x^q") {
      idx = 1;
    } else {
      raise(ErrorCode::SpecParse, "bad monomial '" + mono + "'");
    }
    terms.emplace_back(idx, ctx->parse(coeff));
    if (end == body.size()) break;
  }
  return from_terms(ctx, terms);
}

bool LinPoly::is_zero() const {
  for (const auto& c : a_)
    if (!c.is_zero()) return false;
  return true;
}

Felt LinPoly::operator()(Felt x) const {
  check_same(ctx_.get(), x.ctx());
  const FieldCtx& f = *ctx_;
  uint32_t acc = 0;
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (!a_[i].is_zero()) acc = f.add(acc, f.mul(a_[i].index(), f.frob(x.index(), static_cast<int64_t>(i))));
  return Felt(ctx_.get(), acc);
}

int LinPoly::qdeg() const {
  for (std::size_t i = a_.size(); i-- > 0;)
    if (!a_[i].is_zero()) return static_cast<int>(i);
  raise(ErrorCode::ZeroPolynomial, "q-degree of the zero polynomial");
}

int LinPoly::min_qdeg() const {
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (!a_[i].is_zero()) return static_cast<int>(i);
  raise(ErrorCode::ZeroPolynomial, "minimal q-degree of the zero polynomial");
}

LinPoly LinPoly::operator+(const LinPoly& o) const {
  if (ctx_ != o.ctx_) raise(ErrorCode::ContextMismatch, "polynomials over different fields");
  LinPoly out(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] += o.a_[i];
  return out;
}

LinPoly LinPoly::operator-(const LinPoly& o) const {
  if (ctx_ != o.ctx_) raise(ErrorCode::ContextMismatch, "polynomials over different fields");
  LinPoly out(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] -= o.a_[i];
  return out;
}

LinPoly LinPoly::scaled(Felt c) const {
  LinPoly out(*this);
  for (auto& a : out.a_) a = c * a;
  return out;
}

std::vector<Felt> LinPoly::basis_images() const {
  std::vector<Felt> out;
  for (const Felt& b : fq_basis(*ctx_)) out.push_back((*this)(b));
  return out;
}

FqMatrix LinPoly::matrix() const {
  const std::size_t n = ctx_->N();
  FqMatrix m(n, std::vector<Felt>(n, ctx_->zero()));
  auto images = basis_images();
  for (std::size_t j = 0; j < n; ++j) {
    auto c = ctx_->fq_coords(images[j]);
    for (std::size_t i = 0; i < n; ++i) m[i][j] = c[i];
  }
  return m;
}

int LinPoly::rank() const { return static_cast<int>(matrix_rank(matrix())); }

int LinPoly::kernel_dim() const { return static_cast<int>(ctx_->N()) - rank(); }

std::vector<std::pair<int, uint32_t>> LinPoly::terms() const {
  std::vector<std::pair<int, uint32_t>> out;
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (!a_[i].is_zero()) out.emplace_back(static_cast<int>(i), a_[i].index());
  return out;
}

std::string LinPoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (auto [i, c] : terms()) {
    os << (first ? "" : "; ") << c << "*x^q^" << i;
    first = false;
  }
  if (first) os << "0*x^q^0";
  return os.str();
}

LinPoly lp_compose(const LinPoly& L, const LinPoly& M) {
  if (L.ctx() != M.ctx()) raise(ErrorCode::ContextMismatch, "polynomials over different fields");
  const std::size_t n = L.size();
  std::vector<Felt> out(n, L.ctx()->zero());
  for (std::size_t i = 0; i < n; ++i) {
    if (L.coeff(i).is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (M.coeff(j).is_zero()) continue;
      out[(i + j) % n] += L.coeff(i) * M.coeff(j).frob(static_cast<int64_t>(i));
    }
  }
  return LinPoly(L.ctx(), std::move(out));
}

std::vector<Felt> fq_basis(const FieldCtx& ctx) {
  std::vector<Felt> out;
  for (uint32_t i = 0; i < ctx.N(); ++i) out.push_back(ctx.basis(i));
  return out;
}

int rank_of_images(const FieldCtx& ctx, const std::vector<Felt>& images) {
  const std::size_t n = ctx.N();
  FqMatrix m(n, std::vector<Felt>(images.size(), ctx.zero()));
  for (std::size_t j = 0; j < images.size(); ++j) {
    auto c = ctx.fq_coords(images[j]);
    for (std::size_t i = 0; i < n; ++i) m[i][j] = c[i];
  }
  return static_cast<int>(matrix_rank(std::move(m)));
}

}  // namespace rankcurve
