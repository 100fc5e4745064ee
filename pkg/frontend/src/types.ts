// Wire formats of the workbench service, mirrored field for field.

export interface ArrowDoc {
	id: string;
	from: string;
	to: string;
}

export interface QuiverDoc {
	vertices: string[];
	arrows: ArrowDoc[];
}

export interface ParamsDoc {
	r1: number;
	r2: number;
	s1: number;
	s2: number;
	r_bar: number;
	s_bar: number;
}

export interface PhiPairDoc {
	n: number;
	m: number;
	count: number;
}

export interface PhiDoc {
	pairs: PhiPairDoc[];
}

export interface CartanDoc {
	order: string[];
	matrix: number[][];
}

export interface CycleArrowDoc {
	id: string;
	forward: boolean;
}

export interface DecompositionDoc {
	cycle: string[];
	cycle_arrows: CycleArrowDoc[];
	attached: Record<string, string>;
	branches: Record<string, string[]>;
}

export interface AnalysisDoc {
	recognized: boolean;
	vertices: number;
	arrows: number;
	reason?: string;
	parameters?: ParamsDoc;
	phi?: PhiDoc;
	cartan?: CartanDoc;
	decomposition?: DecompositionDoc;
}

export interface TraceStepDoc {
	vertex: string;
	tag: string;
}

export interface ReduceDoc {
	steps: TraceStepDoc[];
	normal_form: QuiverDoc;
}

export interface DecisionDoc {
	derived_equivalent: boolean;
	params_a: ParamsDoc;
	params_b: ParamsDoc;
	phi_a: PhiDoc;
	phi_b: PhiDoc;
	consistent: boolean;
}

// The service emits compact JSON with stable key order; JSON.parse keeps
// that order, so stringifying a parsed document reproduces its exact bytes.
export function canonicalBytes(doc: unknown): string {
	return JSON.stringify(doc);
}
