/**
 * Wire types mirroring the gateway's JSON documents.
 *
 * The cockpit never derives financial figures: everything rendered comes
 * verbatim from these documents, formatted for display only.
 */
export {};
