// Session state: current document, undo/redo history, latest analysis and
// the pending guided-reduction trace.  All mathematics happens on the
// server; this module only moves documents around, so replaying the
// recorded vertices from the initial document always reproduces the
// current one.

import { canonicalBytes } from "./types.js";
import type { AnalysisDoc, QuiverDoc, TraceStepDoc } from "./types.js";

export interface MutationApi {
	mutate(quiver: QuiverDoc, vertex: string): Promise<QuiverDoc>;
	analyze(quiver: QuiverDoc): Promise<AnalysisDoc>;
	reduce(quiver: QuiverDoc): Promise<ReduceLike>;
}

export interface ReduceLike {
	steps: TraceStepDoc[];
	normal_form: QuiverDoc;
}

export interface HistoryEntry {
	quiver: QuiverDoc; // document before mutating
	vertex: string;
}

export interface ReductionTrace {
	steps: TraceStepDoc[];
	normalForm: QuiverDoc;
	position: number;
	invalidated: boolean;
}

export class ExplorerSession {
	initial: QuiverDoc | null = null;
	current: QuiverDoc | null = null;
	report: AnalysisDoc | null = null;
	history: HistoryEntry[] = [];
	future: HistoryEntry[] = [];
	trace: ReductionTrace | null = null;

	constructor(private api: MutationApi) {}

	private must(): QuiverDoc {
		if (this.current === null) throw new Error("no document loaded");
		return this.current;
	}

	async load(doc: QuiverDoc): Promise<void> {
		this.initial = doc;
		this.current = doc;
		this.history = [];
		this.future = [];
		this.trace = null;
		this.report = await this.api.analyze(doc);
	}

	/** Mutation triggered by a vertex click; invalidates a pending trace. */
	async mutateAt(vertex: string): Promise<void> {
		await this.applyMutation(vertex);
		this.invalidateTrace();
	}

	private async applyMutation(vertex: string): Promise<void> {
		const before = this.must();
		const after = await this.api.mutate(before, vertex);
		this.history.push({ quiver: before, vertex });
		this.future = [];
		this.current = after;
		this.report = await this.api.analyze(after);
	}

	private invalidateTrace(): void {
		if (this.trace !== null && !this.traceDone()) {
			this.trace.invalidated = true;
		}
	}

	canUndo(): boolean {
		return this.history.length > 0;
	}

	canRedo(): boolean {
		return this.future.length > 0;
	}

	/** Restores the exact previous document object, byte for byte. */
	async undo(): Promise<void> {
		const entry = this.history.pop();
		if (!entry) return;
		this.future.push({ quiver: this.must(), vertex: entry.vertex });
		this.current = entry.quiver;
		this.invalidateTrace();
		this.report = await this.api.analyze(entry.quiver);
	}

	async redo(): Promise<void> {
		const entry = this.future.pop();
		if (!entry) return;
		this.history.push({ quiver: this.must(), vertex: entry.vertex });
		this.current = entry.quiver;
		this.invalidateTrace();
		this.report = await this.api.analyze(entry.quiver);
	}

	traceDone(): boolean {
		return this.trace !== null && this.trace.position >= this.trace.steps.length;
	}

	traceActive(): boolean {
		return this.trace !== null && !this.trace.invalidated && !this.traceDone();
	}

	async startReduction(): Promise<void> {
		if (this.report === null || !this.report.recognized) {
			throw new Error("reduction needs a recognized quiver");
		}
		const doc = await this.api.reduce(this.must());
		this.trace = {
			steps: doc.steps,
			normalForm: doc.normal_form,
			position: 0,
			invalidated: false,
		};
	}

	/**
	 * Applies the next recorded step through the ordinary mutate endpoint
	 * and checks that the parameter panel did not move.
	 */
	async stepReduction(): Promise<TraceStepDoc> {
		if (!this.traceActive()) throw new Error("no active trace");
		const trace = this.trace as ReductionTrace;
		const step = trace.steps[trace.position];
		const before = canonicalBytes(this.report?.parameters ?? null);
		await this.applyMutation(step.vertex);
		const after = canonicalBytes(this.report?.parameters ?? null);
		if (before !== after) {
			trace.invalidated = true;
			throw new Error(`parameters moved during step at ${step.vertex}`);
		}
		trace.position += 1;
		return step;
	}

	abandonReduction(): void {
		if (this.trace !== null) this.trace.invalidated = true;
	}

	/** Re-runs the recorded history from the initial document. */
	async replayFromInitial(): Promise<QuiverDoc> {
		if (this.initial === null) throw new Error("no document loaded");
		let doc = this.initial;
		for (const entry of this.history) {
			doc = await this.api.mutate(doc, entry.vertex);
		}
		return doc;
	}
}
