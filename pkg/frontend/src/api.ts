// Typed client for the workbench endpoints.  Requests are queued so at
// most one call is in flight at a time, matching the single-tab session
// model.

import { AnalysisDoc, DecisionDoc, QuiverDoc, ReduceDoc } from "./types.js";

export class ApiError extends Error {
	constructor(
		readonly status: number,
		readonly kind: string,
		message: string,
	) {
		super(message);
	}
}

async function unwrap<T>(resp: Response): Promise<T> {
	const text = await resp.text();
	if (!resp.ok) {
		let kind = "HttpError";
		let message = text;
		try {
			const doc = JSON.parse(text);
			kind = doc.error ?? kind;
			message = doc.message ?? message;
		} catch {
			// non-JSON error body, keep the raw text
		}
		throw new ApiError(resp.status, kind, message);
	}
	return JSON.parse(text) as T;
}

export class ApiClient {
	private chain: Promise<unknown> = Promise.resolve();

	constructor(readonly base: string = "") {}

	private enqueue<T>(job: () => Promise<T>): Promise<T> {
		const run = () => job();
		const next = this.chain.then(run, run);
		this.chain = next.then(
			() => undefined,
			() => undefined,
		);
		return next;
	}

	private post<T>(path: string, body: unknown): Promise<T> {
		return this.enqueue(async () => {
			const resp = await fetch(this.base + path, {
				method: "POST",
				headers: { "Content-Type": "application/json" },
				body: JSON.stringify(body),
			});
			return unwrap<T>(resp);
		});
	}

	async mutate(quiver: QuiverDoc, vertex: string): Promise<QuiverDoc> {
		const doc = await this.post<{ quiver: QuiverDoc }>("/api/mutate", {
			quiver,
			vertex,
		});
		return doc.quiver;
	}

	analyze(quiver: QuiverDoc): Promise<AnalysisDoc> {
		return this.post<AnalysisDoc>("/api/analyze", { quiver });
	}

	reduce(quiver: QuiverDoc): Promise<ReduceDoc> {
		return this.post<ReduceDoc>("/api/reduce", { quiver });
	}

	derivedEq(a: QuiverDoc, b: QuiverDoc): Promise<DecisionDoc> {
		return this.post<DecisionDoc>("/api/derived-eq", { a, b });
	}

	async normalForm(r1: number, r2: number, s1: number, s2: number): Promise<QuiverDoc> {
		return this.enqueue(async () => {
			const resp = await fetch(
				`${this.base}/api/normal-form?r1=${r1}&r2=${r2}&s1=${s1}&s2=${s2}`,
			);
			const doc = await unwrap<{ quiver: QuiverDoc }>(resp);
			return doc.quiver;
		});
	}
}
