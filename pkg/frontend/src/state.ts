/** Planner session state. Every displayed physical number comes from the
 * latest server response stored here; this module never computes losses,
 * clearances or margins itself. */

import {
  ApiClient,
  BudgetRequest,
  BudgetResponse,
  ProfileRequest,
  ProfileResponse,
  SiteInfo,
} from "./api.js";
import { LatestWinsQueue } from "./requestQueue.js";

export interface RadioFields {
  tx_power_dbm: number;
  tx_cable_loss_db: number;
  tx_antenna_gain_dbi: number;
  rx_antenna_gain_dbi: number;
  rx_cable_loss_db: number;
  rx_sensitivity_dbm: number;
}

export interface HistoryEntry {
  kFactor: number;
  txHeightM: number;
  marginDb: number | null;
}

export const HISTORY_LENGTH = 5;

export interface PlannerState {
  owner: string;
  offline: boolean;
  sites: SiteInfo[];
  txSite: string | null;
  rxSite: string | null;
  txHeightM: number;
  rxHeightM: number;
  frequencyMhz: number;
  kFactor: number;
  radios: RadioFields | null;
  profile: ProfileResponse | null;
  budget: BudgetResponse | null;
  stale: boolean;
  lastError: string | null;
  history: HistoryEntry[];
}

export class PlannerStore {
  readonly state: PlannerState;
  private readonly profileQueue: LatestWinsQueue<ProfileRequest, ProfileResponse>;
  private readonly budgetQueue: LatestWinsQueue<BudgetRequest, BudgetResponse>;

  constructor(
    private readonly api: ApiClient,
    private readonly onChange: (state: PlannerState) => void = () => {},
    owner = "webui",
  ) {
    this.state = {
      owner,
      offline: false,
      sites: [],
      txSite: null,
      rxSite: null,
      txHeightM: 10,
      rxHeightM: 10,
      frequencyMhz: 5800,
      kFactor: 4 / 3,
      radios: null,
      profile: null,
      budget: null,
      stale: false,
      lastError: null,
      history: [],
    };
    this.profileQueue = new LatestWinsQueue(
      (req) => this.api.computeProfile(req),
      (resp) => this.applyProfile(resp),
      (err) => this.applyFailure(err),
    );
    this.budgetQueue = new LatestWinsQueue(
      (req) => this.api.computeBudget(req),
      (resp) => this.applyBudget(resp),
      (err) => this.applyFailure(err),
    );
  }

  get maxProfileRequestsInFlight(): number {
    return this.profileQueue.maxObservedInFlight;
  }

  async settle(): Promise<void> {
    await this.profileQueue.idle();
    await this.budgetQueue.idle();
  }

  async refreshHealth(): Promise<void> {
    this.state.offline = !(await this.api.health());
    this.notify();
  }

  async refreshSites(): Promise<void> {
    this.state.sites = await this.api.listSites(this.state.owner);
    this.notify();
  }

  async addSite(name: string, lat: number, lon: number): Promise<string | null> {
    const resp = await this.api.createSite(this.state.owner, name, lat, lon);
    if (resp.kind === "error") {
      return resp.body;
    }
    await this.refreshSites();
    return null;
  }

  selectSites(tx: string, rx: string): void {
    this.state.txSite = tx;
    this.state.rxSite = rx;
    this.notify();
  }

  get linkReady(): boolean {
    return (
      this.state.txSite !== null &&
      this.state.rxSite !== null &&
      this.state.txSite !== this.state.rxSite
    );
  }

  setTxHeight(meters: number): void {
    this.state.txHeightM = meters;
    this.requestProfile();
  }

  setRxHeight(meters: number): void {
    this.state.rxHeightM = meters;
    this.requestProfile();
  }

  setFrequency(mhz: number): void {
    this.state.frequencyMhz = mhz;
    this.requestProfile();
  }

  setKFactor(k: number): void {
    this.state.kFactor = k;
    this.requestProfile();
  }

  setRadios(radios: RadioFields): void {
    this.state.radios = radios;
    this.requestBudget();
  }

  requestProfile(): void {
    if (!this.linkReady) return;
    this.profileQueue.submit({
      owner: this.state.owner,
      tx: this.state.txSite as string,
      rx: this.state.rxSite as string,
      tx_height_m: this.state.txHeightM,
      rx_height_m: this.state.rxHeightM,
      frequency_mhz: this.state.frequencyMhz,
      k_factor: this.state.kFactor,
    });
  }

  requestBudget(): void {
    if (!this.linkReady || this.state.radios === null) return;
    const req: BudgetRequest = {
      owner: this.state.owner,
      tx: this.state.txSite as string,
      rx: this.state.rxSite as string,
      ...this.state.radios,
      frequency_mhz: this.state.frequencyMhz,
    };
    // keep the budget tied to the profile the user is looking at
    if (this.state.profile !== null) {
      req.path_loss_db = this.state.profile.loss.model_loss_db;
    }
    this.budgetQueue.submit(req);
  }

  private applyProfile(resp: ProfileResponse): void {
    this.state.profile = resp;
    this.state.stale = false;
    this.state.lastError = null;
    this.pushHistory();
    // margin tracks the new path loss once radios are known
    if (this.state.radios !== null) {
      this.requestBudget();
    }
    this.notify();
  }

  private applyBudget(resp: BudgetResponse): void {
    this.state.budget = resp;
    this.state.stale = false;
    this.state.lastError = null;
    if (this.state.history.length > 0) {
      this.state.history[this.state.history.length - 1].marginDb = resp.margin_db;
    }
    this.notify();
  }

  private applyFailure(error: unknown): void {
    // previous results stay on screen, flagged as stale
    this.state.stale = true;
    this.state.lastError = error instanceof Error ? error.message : String(error);
    this.notify();
  }

  private pushHistory(): void {
    this.state.history.push({
      kFactor: this.state.kFactor,
      txHeightM: this.state.txHeightM,
      marginDb: this.state.budget ? this.state.budget.margin_db : null,
    });
    if (this.state.history.length > HISTORY_LENGTH) {
      this.state.history.splice(0, this.state.history.length - HISTORY_LENGTH);
    }
  }

  private notify(): void {
    this.onChange(this.state);
  }
}
