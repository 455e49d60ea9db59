/** Inline form validation shared by the site form and budget panel. */

const SITE_NAME = /^[A-Za-z0-9_]{1,32}$/;

export function validateSiteName(name: string): string | null {
  if (!SITE_NAME.test(name)) {
    return "name must be 1-32 letters, digits or underscores";
  }
  return null;
}

export function validateLatitude(value: number): string | null {
  if (!Number.isFinite(value) || value < -90 || value > 90) {
    return "latitude must be between -90 and 90";
  }
  return null;
}

export function validateLongitude(value: number): string | null {
  if (!Number.isFinite(value) || value < -180 || value >= 180) {
    return "longitude must be between -180 and 180";
  }
  return null;
}

export function validateNumber(value: number, label: string): string | null {
  if (!Number.isFinite(value)) {
    return `${label} must be a number`;
  }
  return null;
}
