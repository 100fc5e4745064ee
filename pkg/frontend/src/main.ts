// Browser wiring: canvas interaction, toolbar, live panels and the guided
// reduction stepper.  The server is the single source of truth; every
// mutation is a round trip.

import { ApiClient, ApiError } from "./api.js";
import { hitVertex, layoutPositions } from "./layout.js";
import {
	derivedBadgeText,
	mutationBadgeText,
	paramsPanelDoc,
	paramsRows,
	phiPanelDoc,
	phiRows,
	sideTotalsText,
} from "./panels.js";
import { drawQuiver } from "./render.js";
import { ExplorerSession } from "./session.js";
import { canonicalBytes } from "./types.js";
import type { Point } from "./layout.js";
import type { QuiverDoc } from "./types.js";

const api = new ApiClient("");
const session = new ExplorerSession(api);

const canvas = document.getElementById("board") as HTMLCanvasElement;
const ctx = canvas.getContext("2d") as CanvasRenderingContext2D;

let positions = new Map<string, Point>();
let hover: string | null = null;
let busy = false;

function el(id: string): HTMLElement {
	const node = document.getElementById(id);
	if (!node) throw new Error(`missing element #${id}`);
	return node;
}

function toast(message: string): void {
	const box = el("toast");
	box.textContent = message;
	box.classList.add("visible");
	window.setTimeout(() => box.classList.remove("visible"), 4200);
}

function refresh(): void {
	const doc = session.current;
	if (!doc) return;
	const dec = session.report?.decomposition ?? null;
	positions = layoutPositions(doc, dec, canvas.width, canvas.height);
	drawQuiver(ctx, doc, positions, dec, hover);
	renderPanels();
	renderTrace();
	(el("undo") as HTMLButtonElement).disabled = !session.canUndo();
	(el("redo") as HTMLButtonElement).disabled = !session.canRedo();
	(el("reduce") as HTMLButtonElement).disabled = !(session.report?.recognized ?? false);
	(el("step") as HTMLButtonElement).disabled = !session.traceActive();
	(el("abandon") as HTMLButtonElement).disabled = session.trace === null;
}

function renderPanels(): void {
	const report = session.report;
	if (!report) return;
	el("counts").textContent = `${report.vertices} vertices, ${report.arrows} arrows`;
	el("derived-badge").textContent = derivedBadgeText(report);
	el("mutation-badge").textContent = mutationBadgeText(report);

	const params = paramsPanelDoc(report);
	const paramsTable = el("params-table");
	paramsTable.innerHTML = "";
	if (params) {
		for (const [name, value] of paramsRows(params)) {
			const row = document.createElement("tr");
			row.innerHTML = `<td>${name}</td><td>${value}</td>`;
			paramsTable.appendChild(row);
		}
		el("side-totals").textContent = sideTotalsText(params);
	} else {
		el("side-totals").textContent = "";
	}

	const phi = phiPanelDoc(report);
	const phiList = el("phi-list");
	phiList.innerHTML = "";
	if (phi) {
		for (const line of phiRows(phi)) {
			const item = document.createElement("li");
			item.textContent = line;
			phiList.appendChild(item);
		}
	}
}

function renderTrace(): void {
	const box = el("trace-status");
	const trace = session.trace;
	if (!trace) {
		box.textContent = "no trace loaded";
		return;
	}
	if (trace.invalidated && !session.traceDone()) {
		box.textContent = `trace invalidated at step ${trace.position}/${trace.steps.length}`;
		return;
	}
	if (session.traceDone()) {
		box.textContent = `trace complete (${trace.steps.length} steps); picture is the normal form`;
		return;
	}
	const next = trace.steps[trace.position];
	box.textContent =
		`step ${trace.position}/${trace.steps.length}; ` +
		`next: mutate at ${next.vertex} (${next.tag})`;
}

async function guarded(job: () => Promise<void>): Promise<void> {
	if (busy) return;
	busy = true;
	try {
		await job();
	} catch (err) {
		if (err instanceof ApiError) {
			toast(err.status === 422 ? `not in class: ${err.message}` : err.message);
		} else {
			toast(String(err));
		}
	} finally {
		busy = false;
		refresh();
	}
}

canvas.addEventListener("mousemove", (event) => {
	const rect = canvas.getBoundingClientRect();
	const found = hitVertex(positions, event.clientX - rect.left, event.clientY - rect.top);
	if (found !== hover) {
		hover = found;
		refresh();
	}
});

canvas.addEventListener("click", (event) => {
	const rect = canvas.getBoundingClientRect();
	const vertex = hitVertex(positions, event.clientX - rect.left, event.clientY - rect.top);
	if (vertex === null || session.current === null) return;
	void guarded(() => session.mutateAt(vertex));
});

el("undo").addEventListener("click", () => void guarded(() => session.undo()));
el("redo").addEventListener("click", () => void guarded(() => session.redo()));
el("reduce").addEventListener("click", () => void guarded(() => session.startReduction()));
el("step").addEventListener("click", () =>
	void guarded(async () => {
		await session.stepReduction();
	}),
);
el("abandon").addEventListener("click", () => {
	session.abandonReduction();
	refresh();
});

el("load-normal-form").addEventListener("click", () =>
	void guarded(async () => {
		const read = (id: string) => Number((el(id) as HTMLInputElement).value || "0");
		const doc = await api.normalForm(read("nf-r1"), read("nf-r2"), read("nf-s1"), read("nf-s2"));
		await session.load(doc);
	}),
);

el("import").addEventListener("change", (event) => {
	const input = event.target as HTMLInputElement;
	const file = input.files?.[0];
	if (!file) return;
	void guarded(async () => {
		const text = await file.text();
		await session.load(JSON.parse(text) as QuiverDoc);
	});
	input.value = "";
});

el("export").addEventListener("click", () => {
	if (!session.current) return;
	const blob = new Blob([canonicalBytes(session.current) + "\n"], {
		type: "application/json",
	});
	const link = document.createElement("a");
	link.href = URL.createObjectURL(blob);
	link.download = "quiver.json";
	link.click();
	URL.revokeObjectURL(link.href);
});

void guarded(async () => {
	const doc = await api.normalForm(2, 3, 3, 4);
	await session.load(doc);
});
