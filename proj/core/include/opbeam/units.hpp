#pragma once

#include <string>

namespace opbeam::units {

// Units appearing in scenario inputs and budget lines. Conversions exist
// only within a dimension group: {m, km, nm}, {rad, urad}, {Hz, GHz}.
enum class Unit {
    meter,
    kilometer,
    nanometer,
    second,
    radian,
    microradian,
    watt,
    watt_hour,
    kilogram,
    hertz,
    gigahertz,
    bits_per_second,
    volt,
    ampere_hour,
    dimensionless,
};

const char* unit_symbol(Unit u);

/**
 * A finite scalar tagged with a unit. Construction rejects NaN/Inf, so a
 * Quantity can never carry a non-finite value. Conversion between units of
 * the same dimension rescales through the base unit; anything else throws
 * std::domain_error naming both units.
 */
class Quantity {
public:
    Quantity(double value, Unit unit);

    double value() const { return value_; }
    Unit unit() const { return unit_; }

    Quantity converted_to(Unit target) const;

    // Shorthand: converted_to(target).value().
    double in(Unit target) const { return converted_to(target).value(); }

private:
    double value_;
    Unit unit_;
};

// Reference for a decibel figure. dbm/dbw/dbhz are absolute (power or
// bandwidth referenced); ratio and dbi are relative.
enum class DbReference {
    ratio,  // plain dB
    dbi,    // gain relative to isotropic
    dbm,    // power, 1 mW reference
    dbw,    // power, 1 W reference
    dbhz,   // density reference, per hertz
};

const char* db_reference_symbol(DbReference r);
bool is_absolute(DbReference r);

/**
 * A decibel figure that knows what it is referenced to, so link budgets
 * cannot silently mix incompatible terms. The algebra enforced by the
 * operators:
 *
 *   ratio + ratio            -> ratio
 *   absolute + ratio         -> absolute (same reference)
 *   absolute - absolute      -> ratio (references must match)
 *   absolute + absolute      -> rejected (std::domain_error)
 *
 * dbi participates as a ratio. converted_to() maps between dbm and dbw by
 * adding/subtracting exactly 30.
 */
class Decibel {
public:
    Decibel(double db, DbReference reference);

    double db() const { return db_; }
    DbReference reference() const { return reference_; }

    Decibel converted_to(DbReference target) const;

private:
    double db_;
    DbReference reference_;
};

Decibel operator+(const Decibel& a, const Decibel& b);
Decibel operator-(const Decibel& a, const Decibel& b);

// 10*log10(r); r must be > 0.
Decibel db_from_ratio(double r);

// The linear value behind a decibel figure: a plain ratio for dB/dBi,
// watts for dBm/dBW, hertz for dBHz.
double ratio_from_db(const Decibel& d);

double dbm_from_watts(double watts);
double watts_from_dbm(double dbm);

}  // namespace opbeam::units
