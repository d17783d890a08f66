export interface BannerThresholds {
  // Both are deliberate user inputs, not constants: the stop-now rule of
  // thumb ("enough data in hand, dilution negligible") is judgement.
  tauStopThreshold: number;
  etaNegligibleBound: number;
}

export const DEFAULT_THRESHOLDS: BannerThresholds = {
  tauStopThreshold: 0.85,
  etaNegligibleBound: 0,
};

export type Recommendation = 'stop-now' | 'explore-designs';

export function recommend(
  tau: number,
  eta: number,
  thresholds: BannerThresholds,
): Recommendation {
  if (tau >= thresholds.tauStopThreshold && eta <= thresholds.etaNegligibleBound) {
    return 'stop-now';
  }
  return 'explore-designs';
}
