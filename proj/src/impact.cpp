#include "tara/impact.hpp"

#include "tara/error.hpp"

namespace tara::impact {

std::int64_t numeric(Level level) {
  switch (level) {
    case Level::None: return 0;
    case Level::Low: return 1;
    case Level::Medium: return 10;
    case Level::High: return 100;
  }
  return 0;
}

Level ImpactVector::get(Objective o) const {
  switch (o) {
    case Objective::Safety: return safety;
    case Objective::Operational: return operational;
    case Objective::Financial: return financial;
    case Objective::Privacy: return privacy;
  }
  return Level::None;
}

void ImpactVector::set(Objective o, Level level) {
  switch (o) {
    case Objective::Safety: safety = level; break;
    case Objective::Operational: operational = level; break;
    case Objective::Financial: financial = level; break;
    case Objective::Privacy: privacy = level; break;
  }
}

ImpactVector ImpactOverrides::applied_to(ImpactVector v) const {
  if (safety) v.safety = *safety;
  if (operational) v.operational = *operational;
  if (financial) v.financial = *financial;
  if (privacy) v.privacy = *privacy;
  return v;
}

Weights::Weights() : Weights(10, 1, 1, 1) {}

Weights::Weights(Rational safety, Rational operational, Rational financial, Rational privacy)
    : safety_(safety), operational_(operational), financial_(financial), privacy_(privacy) {
  for (const Rational* w : {&safety_, &operational_, &financial_, &privacy_})
    if (*w <= Rational(0)) throw Error("impact weights must be strictly positive");
}

const Rational& Weights::get(Objective o) const {
  switch (o) {
    case Objective::Safety: return safety_;
    case Objective::Operational: return operational_;
    case Objective::Financial: return financial_;
    case Objective::Privacy: return privacy_;
  }
  return safety_;
}

ImpactScore impact_score(const ImpactVector& v, const Weights& w) {
  ImpactScore out;
  for (Objective o : kObjectives) out.raw += w.get(o) * numeric(v.get(o));
  out.value = out.raw / (Rational(100) * w.total());
  return out;
}

Rating impact_rating(const ImpactScore& s) {
  const Rational& x = s.value;
  if (x == Rational(0)) return Rating::None;
  if (x < Rational(1, 100)) return Rating::Low;
  if (x < Rational(5, 100)) return Rating::Medium;
  if (x < Rational(45, 100)) return Rating::High;
  return Rating::Critical;
}

std::string format_decimal(const Rational& r, int places) {
  std::int64_t scale = 1;
  for (int k = 0; k < places; ++k) scale *= 10;
  // floor(r * scale + 1/2) on the exact fraction.
  const std::int64_t num = r.numerator() * scale * 2 + r.denominator();
  const std::int64_t den = r.denominator() * 2;
  const std::int64_t scaled = num / den;
  if (places <= 0) return std::to_string(scaled);
  std::string frac = std::to_string(scaled % scale);
  frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
  return std::to_string(scaled / scale) + (places > 0 ? "." + frac : "");
}

std::string ImpactScore::str() const { return format_decimal(value, 4); }

std::string_view describe_level(Objective objective, Level level) {
  static constexpr std::string_view kTable[4][4] = {
      // Safety
      {"No injury", "Light and moderate injuries",
       "Severe and life-threatening injuries (survival probable)",
       "Life-threatening injuries (survival uncertain), fatal injuries"},
      // Operational
      {"No discernible effect",
       "Appearance item or audible noise (vehicle still operates, but does not conform, "
       "annoys more than 75% of customers)",
       "Degradation of primary function (vehicle still operates, but at a reduced level of "
       "performance)",
       "Potential failure mode affects safe vehicle operation without warning or involves "
       "non-compliance with government regulations"},
      // Financial
      {"No discernible effect. No appreciable consequences",
       "The financial damage remains tolerable to the organisation",
       "The resulting damage leads to substantial financial losses, but does not threaten "
       "the existence of the organisation",
       "The financial damage threatens the existence of the organisation"},
      // Privacy
      {"No discernible effects in relation to violations of privacy",
       "Privacy violations of a particular stakeholder (e.g., vehicle owner, driver) which "
       "may not lead to abuses (e.g., impersonation of a victim to perform actions with "
       "stolen identities). Violation of legislations without appreciable consequences for "
       "business operations and finance (e.g., warning without any significant financial "
       "penalty, limited media coverage) for any stakeholder (e.g., OEM, fleet owner, driver)",
       "Privacy violations of a particular stakeholder (e.g., vehicle owner, driver) leading "
       "to abuses (e.g., impersonation of a victim to perform actions with stolen identities) "
       "and media coverage. Violation of legislations with potential consequences for "
       "business operations and finance (e.g., financial penalties, loss of market share, "
       "media coverage)",
       "Privacy violation of multiple stakeholders (e.g., fleet owners, multiple vehicle "
       "owners and multiple drivers) leading to abuses (e.g., impersonation of a victim to "
       "perform actions with stolen identities). Such a level of privacy violation may lead "
       "to extensive media coverage as well as severe consequences in terms of loss of "
       "market share, business operations, trust, reputation, and finance for OEMs and fleet "
       "owners. Violation of legislations (e.g., environmental, driver) causing significant "
       "consequences for business operations and finance (e.g., huge financial penalties, "
       "loss of market share) as well as extensive media coverage"},
  };
  return kTable[static_cast<int>(objective)][static_cast<int>(level)];
}

std::string_view to_string(Level level) {
  switch (level) {
    case Level::None: return "None";
    case Level::Low: return "Low";
    case Level::Medium: return "Medium";
    case Level::High: return "High";
  }
  return "None";
}

std::string_view to_string(Objective objective) {
  switch (objective) {
    case Objective::Safety: return "safety";
    case Objective::Operational: return "operational";
    case Objective::Financial: return "financial";
    case Objective::Privacy: return "privacy";
  }
  return "safety";
}

std::string_view to_string(Rating rating) {
  switch (rating) {
    case Rating::None: return "None";
    case Rating::Low: return "Low";
    case Rating::Medium: return "Medium";
    case Rating::High: return "High";
    case Rating::Critical: return "Critical";
  }
  return "None";
}

Level level_from_string(std::string_view s) {
  for (Level l : {Level::None, Level::Low, Level::Medium, Level::High})
    if (to_string(l) == s) return l;
  throw ParseError("unknown impact level '" + std::string(s) + "'");
}

Objective objective_from_string(std::string_view s) {
  for (Objective o : kObjectives)
    if (to_string(o) == s) return o;
  throw ParseError("unknown impact objective '" + std::string(s) + "'");
}

Rating rating_from_string(std::string_view s) {
  for (Rating r : {Rating::None, Rating::Low, Rating::Medium, Rating::High, Rating::Critical})
    if (to_string(r) == s) return r;
  throw ParseError("unknown impact rating '" + std::string(s) + "'");
}

}  // namespace tara::impact
