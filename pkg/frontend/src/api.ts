/** Typed client for the link-planning HTTP API. All physics lives on the
 * server; this module only moves JSON. */

export interface SiteInfo {
  name: string;
  lat: number;
  lon: number;
  elevation_m: number | null;
}

export interface ClearanceVerdict {
  worst_fraction: number;
  worst_distance_km: number;
  class: string;
}

export interface LossInfo {
  fspl_db: number;
  model_loss_db: number;
  shielding_db: number;
  mode: string;
  model: string;
}

export interface ProfileResponse {
  tx: string;
  rx: string;
  distance_km: number;
  sample_spacing_m: number;
  frequency_mhz: number;
  k_factor: number;
  distances_km: number[];
  terrain_m: number[];
  bulge_m: number[];
  los_m: number[];
  fresnel1_m: number[];
  clearance_fraction: (number | null)[];
  verdict: ClearanceVerdict;
  loss: LossInfo;
}

export interface BudgetResponse {
  eirp_dbm: number;
  path_loss_db: number;
  rx_power_dbm: number;
  margin_db: number;
  frequency_mhz: number;
  series: [number, number][];
}

export interface CommandResponse {
  kind: string;
  body: string;
  chart_ref: string | null;
  diagnostics: string[];
}

export interface ProfileRequest {
  owner: string;
  tx: string;
  rx: string;
  tx_height_m: number;
  rx_height_m: number;
  frequency_mhz: number;
  k_factor: number;
  model?: string;
}

export interface BudgetRequest {
  owner: string;
  tx: string;
  rx: string;
  tx_power_dbm: number;
  tx_cable_loss_db: number;
  tx_antenna_gain_dbi: number;
  rx_antenna_gain_dbi: number;
  rx_cable_loss_db: number;
  rx_sensitivity_dbm: number;
  path_loss_db?: number;
  frequency_mhz?: number;
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!resp.ok) {
      let message = `request failed (${resp.status})`;
      try {
        const payload = await resp.json();
        if (payload.error) message = payload.error;
      } catch {
        /* keep the generic message */
      }
      throw new ApiError(message, resp.status);
    }
    return resp.json() as Promise<T>;
  }

  async health(): Promise<boolean> {
    try {
      const resp = await this.fetchFn(this.baseUrl + "/healthz");
      return resp.ok;
    } catch {
      return false;
    }
  }

  async listSites(owner: string): Promise<SiteInfo[]> {
    const resp = await this.fetchFn(
      this.baseUrl + `/api/sites?owner=${encodeURIComponent(owner)}`,
    );
    if (!resp.ok) throw new ApiError(`sites listing failed (${resp.status})`, resp.status);
    const payload = (await resp.json()) as { sites: SiteInfo[] };
    return payload.sites;
  }

  async createSite(owner: string, name: string, lat: number, lon: number): Promise<CommandResponse> {
    return this.post<CommandResponse>("/api/command", {
      owner,
      line: `site ${name} ${lat} ${lon}`,
    });
  }

  async computeProfile(req: ProfileRequest): Promise<ProfileResponse> {
    return this.post<ProfileResponse>("/api/profile", req);
  }

  async computeBudget(req: BudgetRequest): Promise<BudgetResponse> {
    return this.post<BudgetResponse>("/api/budget", req);
  }
}
