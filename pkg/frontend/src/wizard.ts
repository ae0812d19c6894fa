/** Provisioning wizard: profile -> recommendations -> selection ->
 * confirmation. Forward transitions validate; back preserves entered data;
 * a 409 surfaces per-server headroom and returns to the selection step. */

import type { ConsoleApi } from "./api.js";
import { ApiError } from "./api.js";
import type {
  HeadroomReport,
  ProvisionResponse,
  RequirementProfile,
  ServiceDescriptor,
} from "./types.js";

export type WizardStep = "profile" | "recommendations" | "selection" | "confirmation";

export interface ProfileDraft {
  modalities: string[];
  realtime: boolean;
  targetClasses: string[];
  ueIds: string[];
}

export function emptyDraft(): ProfileDraft {
  return { modalities: [], realtime: false, targetClasses: [], ueIds: [] };
}

export class ProvisioningWizard {
  step: WizardStep = "profile";
  draft: ProfileDraft = emptyDraft();
  matches: ServiceDescriptor[] = [];
  chosenServiceId: string | null = null;
  result: ProvisionResponse | null = null;
  capacityError: { message: string; headroom: HeadroomReport; needed: number | null } | null = null;

  constructor(private readonly api: ConsoleApi) {}

  validateProfile(): string[] {
    const problems: string[] = [];
    if (this.draft.modalities.length === 0) problems.push("pick at least one sensor modality");
    if (this.draft.ueIds.length === 0) problems.push("list the UEs to serve");
    return problems;
  }

  private toProfile(): RequirementProfile {
    return {
      modalities: this.draft.modalities,
      realtime: this.draft.realtime,
      target_classes: this.draft.targetClasses,
      ue_ids: this.draft.ueIds,
    };
  }

  /** profile -> recommendations; refuses to advance on an invalid draft. */
  async submitProfile(): Promise<ServiceDescriptor[]> {
    if (this.step !== "profile") throw new Error(`submitProfile in step ${this.step}`);
    const problems = this.validateProfile();
    if (problems.length > 0) throw new Error(problems.join("; "));
    const response = await this.api.match(this.toProfile());
    this.matches = response.matches;
    this.step = "recommendations";
    return this.matches;
  }

  /** recommendations -> selection: pick one of the recommended services. */
  choose(serviceId: string): void {
    if (this.step !== "recommendations") throw new Error(`choose in step ${this.step}`);
    if (!this.matches.some((svc) => svc.id === serviceId)) {
      throw new Error(`service ${serviceId} was not recommended`);
    }
    this.chosenServiceId = serviceId;
    this.step = "selection";
  }

  /** The 409 path lets the user trim the UE set and retry from selection. */
  reviseUeIds(ueIds: string[]): void {
    if (this.step !== "selection") throw new Error(`reviseUeIds in step ${this.step}`);
    this.draft.ueIds = [...ueIds];
  }

  /** selection -> confirmation on success; stays in selection on 409. */
  async subscribe(): Promise<ProvisionResponse | null> {
    if (this.step !== "selection") throw new Error(`subscribe in step ${this.step}`);
    if (!this.chosenServiceId) throw new Error("no service chosen");
    try {
      this.result = await this.api.provision(this.draft.ueIds, this.chosenServiceId);
      this.capacityError = null;
      this.step = "confirmation";
      return this.result;
    } catch (err) {
      if (err instanceof ApiError && err.code === 409 && err.headroom) {
        this.capacityError = {
          message: err.message,
          headroom: err.headroom,
          needed: err.needed ?? null,
        };
        return null;
      }
      throw err;
    }
  }

  /** Back transitions preserve everything already entered. */
  back(): WizardStep {
    const order: WizardStep[] = ["profile", "recommendations", "selection", "confirmation"];
    const index = order.indexOf(this.step);
    if (index > 0) {
      this.step = order[index - 1]!;
    }
    return this.step;
  }

  /** The copyable integration snippet shown on the confirmation step. */
  get snippet(): string | null {
    return this.result?.integration_snippet ?? null;
  }

  get endpointUrl(): string | null {
    return this.result?.subscription.endpoint_url ?? null;
  }
}
