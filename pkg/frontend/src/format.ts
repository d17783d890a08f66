// Display formatting matching the CLI's CSV output (6 significant digits,
// trailing zeros stripped, two-digit exponents). The UI never computes
// statistics; it only re-prints what the service sent.
export function fmt6(value: number): string {
  if (!Number.isFinite(value)) return String(value);
  if (Number.isInteger(value) && Math.abs(value) < 1e15) return String(value);
  let s = value.toPrecision(6);
  if (s.includes('e')) {
    const [mantissa, exponent] = s.split('e');
    const m = mantissa.includes('.') ? mantissa.replace(/\.?0+$/, '') : mantissa;
    const sign = exponent.startsWith('-') ? '-' : '+';
    const digits = exponent.replace(/^[+-]/, '').padStart(2, '0');
    return `${m}e${sign}${digits}`;
  }
  if (s.includes('.')) {
    s = s.replace(/\.?0+$/, '');
  }
  return s;
}
