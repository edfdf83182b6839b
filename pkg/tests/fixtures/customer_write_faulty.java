public void invokeMainline(Dfhcommarea dfhcommarea) {
    int wsResp;
    int wsResp2;
    int wsCommareaLen = Task.getTask().getApplicationContext().getPlatform().getCommAreaLen();
    try {
        KeyedFile jdeclKeyedFile = new KeyedFile();
        jdeclKeyedFile.setName("KSDSCUST");
        RecordHolder jdeclRecordHolder = new RecordHolder();
        String jdeclLocalCcsid = System.getProperty("com.ibm.cics.jvmserver.local.ccsid");
        Charset jdeclLocalCharSet = Charset.forName(jdeclLocalCcsid);
        jdeclKeyedFile.write(caCustomerNum, wsCommareaLen, jdeclRecordHolder);
    } catch (CicsException e) {
        wsResp = e.getRESP();
        wsResp2 = e.getRESP2();
        dfhcommarea.setCaReturnCode(80);
        mainlineWriteErrorMessage(dfhcommarea, wsResp, wsResp2);
        Task.getTask().abend("LGV0", true);
        return;
    }
}
